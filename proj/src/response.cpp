#include "lde/response.hpp"

#include <cmath>

namespace lde {

namespace {

void check_same_space(const SparseOperator& a, std::int64_t dim, const char* what) {
    if (a.dimension() != dim)
        throw BasisMismatch(std::string(what) + ": operator dimension mismatch");
}

} // namespace

ResponseValue chi0_lehmann(const SpectrumSlice& spectrum, const SparseOperator& o_m,
                           const SparseOperator& o_n, const SolverOptions& opts) {
    const std::int64_t n = o_m.dimension();
    check_same_space(o_n, n, "chi0_lehmann");
    if (static_cast<std::int64_t>(spectrum.eigenvalues.size()) != n)
        throw BasisMismatch("chi0_lehmann: spectrum is not complete for this space");

    const double e0 = spectrum.eigenvalues[0];
    const double gap = spectrum.eigenvalues.size() > 1 ? spectrum.eigenvalues[1] - e0 : 0.0;
    if (spectrum.eigenvalues.size() > 1 && gap <= opts.degeneracy_tol * std::max(1.0, std::abs(e0)))
        throw DegenerateGroundState("chi0_lehmann: degenerate ground level");

    const Vector psi0 = spectrum.eigenvectors.col(0);
    Vector ym = o_m.apply(psi0);
    Vector yn = o_n.apply(psi0);
    // connected subtraction
    ym -= psi0.dot(ym) * psi0;
    yn -= psi0.dot(yn) * psi0;

    const Vector am = spectrum.eigenvectors.adjoint() * ym; // <k|Om~|0>
    const Vector an = spectrum.eigenvectors.adjoint() * yn;
    Complex sum(0.0, 0.0);
    for (std::int64_t k = 1; k < n; ++k)
        sum += (std::conj(am[k]) * an[k] + std::conj(an[k]) * am[k]) /
               (spectrum.eigenvalues[k] - e0);

    ResponseValue rv;
    rv.value = -std::real(sum);
    rv.method = ResponseMethod::lehmann;
    rv.residual = std::abs(std::imag(sum)); // exact symmetrization leaves none
    return rv;
}

ResponseValue chi0_correction_vector(const SparseOperator& hamiltonian, const GroundState& gs,
                                     const SparseOperator& o_m, const SparseOperator& o_n,
                                     const SolverOptions& opts) {
    double max_resid = 0.0;
    const Eigen::MatrixXd values =
        chi0_correction_vector_matrix(hamiltonian, gs, {o_m, o_n}, opts, &max_resid);
    ResponseValue rv;
    rv.value = values(0, 1);
    rv.method = ResponseMethod::correction_vector;
    rv.residual = max_resid;
    return rv;
}

Eigen::MatrixXd chi0_correction_vector_matrix(const SparseOperator& hamiltonian,
                                              const GroundState& gs,
                                              const std::vector<SparseOperator>& ops,
                                              const SolverOptions& opts, double* max_residual) {
    const std::int64_t n = hamiltonian.dimension();
    if (gs.vector.size() != n)
        throw BasisMismatch("chi0_correction_vector: ground state dimension mismatch");

    const Vector& psi0 = gs.vector;
    const int p = static_cast<int>(ops.size());
    std::vector<Vector> connected(static_cast<std::size_t>(p));
    std::vector<Vector> corrected(static_cast<std::size_t>(p));
    double worst = 0.0;
    for (int i = 0; i < p; ++i) {
        check_same_space(ops[static_cast<std::size_t>(i)], n, "chi0_correction_vector");
        Vector y = ops[static_cast<std::size_t>(i)].apply(psi0);
        y -= psi0.dot(y) * psi0;
        double resid = 0.0;
        corrected[static_cast<std::size_t>(i)] = solve_shifted(hamiltonian, gs, y, opts, &resid);
        connected[static_cast<std::size_t>(i)] = std::move(y);
        worst = std::max(worst, resid);
    }
    if (max_residual)
        *max_residual = worst;

    Eigen::MatrixXd chi(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) {
            const Complex forward = connected[static_cast<std::size_t>(i)].dot(
                corrected[static_cast<std::size_t>(j)]);
            const Complex backward = connected[static_cast<std::size_t>(j)].dot(
                corrected[static_cast<std::size_t>(i)]);
            chi(i, j) = chi(j, i) = -std::real(forward + backward);
        }
    return chi;
}

} // namespace lde
