#include "lde/solver.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace lde {

namespace {

Vector random_start(std::int64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Vector v(n);
    for (std::int64_t i = 0; i < n; ++i) {
        const double re = dist(rng);
        const double im = dist(rng);
        v[i] = Complex(re, im);
    }
    v.normalize();
    return v;
}

void project_out(Vector& v, const std::vector<Vector>& dirs) {
    for (const auto& d : dirs)
        v -= d.dot(v) * d;
}

struct LanczosResult {
    double value = 0.0;
    Vector vector;
    double residual = 0.0;
    bool exhausted = false; // Krylov space spanned the whole deflated space
};

// Lowest eigenpair of op restricted to the orthogonal complement of `deflate`.
LanczosResult lanczos_lowest_deflated(const SparseOperator& op,
                                      const std::vector<Vector>& deflate,
                                      const SolverOptions& opts) {
    const std::int64_t n = op.dimension();
    const int max_iter =
        static_cast<int>(std::min<std::int64_t>(opts.lanczos_max_iter, n));

    Vector q = random_start(n, opts.seed);
    project_out(q, deflate);
    if (q.norm() < 1e-8) { // start vector happened to live in the deflated space
        q = random_start(n, opts.seed + 1);
        project_out(q, deflate);
    }
    q.normalize();

    std::vector<Vector> basis;
    basis.reserve(static_cast<std::size_t>(max_iter));
    std::vector<double> alpha, beta;
    LanczosResult out;

    Eigen::VectorXd ritz;
    Eigen::MatrixXd tvecs;
    for (int j = 0; j < max_iter; ++j) {
        basis.push_back(q);
        Vector w = op.apply(q);
        const double a = std::real(q.dot(w));
        alpha.push_back(a);
        w -= a * q;
        if (j > 0)
            w -= beta.back() * basis[static_cast<std::size_t>(j) - 1];
        // full reorthogonalization (two passes) kills ghost eigenvalues
        for (int pass = 0; pass < 2; ++pass) {
            project_out(w, deflate);
            for (const auto& b : basis)
                w -= b.dot(w) * b;
        }
        const double bnorm = w.norm();

        // Ritz values of the current tridiagonal; checking every step would
        // dominate at large iteration counts, so test periodically
        const int m = j + 1;
        const bool breakdown = bnorm <= 1e-14 * std::max(1.0, std::abs(alpha[0]));
        if (m % 5 == 0 || m == max_iter || m == static_cast<int>(n) || breakdown) {
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                t(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i > 0)
                    t(i, i - 1) = t(i - 1, i) = beta[static_cast<std::size_t>(i) - 1];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            ritz = es.eigenvalues();
            tvecs = es.eigenvectors();

            const double resid_est = bnorm * std::abs(tvecs(m - 1, 0));
            const double scale = std::max(1.0, std::abs(ritz[0]));
            if (resid_est <= opts.lanczos_tol * scale || breakdown || m == static_cast<int>(n)) {
                out.exhausted = breakdown && m < n;
                break;
            }
            if (m == max_iter)
                throw NoConvergence("lanczos: no convergence after max iterations");
        }
        beta.push_back(bnorm);
        q = w / bnorm;
    }

    const int m = static_cast<int>(alpha.size());
    out.value = ritz[0];
    out.vector = Vector::Zero(n);
    for (int i = 0; i < m; ++i)
        out.vector += tvecs(i, 0) * basis[static_cast<std::size_t>(i)];
    project_out(out.vector, deflate);
    out.vector.normalize();
    out.residual = (op.apply(out.vector) - out.value * out.vector).norm();
    return out;
}

} // namespace

SpectrumSlice dense_spectrum(const SparseOperator& op, const SolverOptions& opts) {
    const std::int64_t n = op.dimension();
    if (n > opts.dense_cap)
        throw TooLargeForDense("dense_spectrum: dimension " + std::to_string(n) +
                               " exceeds cap " + std::to_string(opts.dense_cap));
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(op.dense());
    if (es.info() != Eigen::Success)
        throw NoConvergence("dense_spectrum: eigensolver failed");
    SpectrumSlice s;
    s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    s.eigenvectors = es.eigenvectors();
    return s;
}

GroundState lanczos_ground(const SparseOperator& op, const SolverOptions& opts) {
    if (op.dimension() < 2)
        throw Error("lanczos_ground: need dimension >= 2");
    LanczosResult ground = lanczos_lowest_deflated(op, {}, opts);
    LanczosResult excited = lanczos_lowest_deflated(op, {ground.vector}, opts);

    GroundState gs;
    gs.energy = ground.value;
    gs.vector = std::move(ground.vector);
    gs.residual = ground.residual;
    gs.gap = excited.value - ground.value;
    if (gs.gap <= opts.degeneracy_tol * std::max(1.0, std::abs(gs.energy)))
        throw DegenerateGroundState("lanczos_ground: ground state degenerate within tolerance (gap " +
                                    std::to_string(gs.gap) + ")");
    return gs;
}

GroundState ground_state_from_spectrum(const SpectrumSlice& spectrum, const SolverOptions& opts) {
    if (spectrum.eigenvalues.size() < 2)
        throw Error("ground_state_from_spectrum: need at least two levels");
    GroundState gs;
    gs.energy = spectrum.eigenvalues[0];
    gs.vector = spectrum.eigenvectors.col(0);
    gs.residual = 0.0;
    gs.gap = spectrum.eigenvalues[1] - spectrum.eigenvalues[0];
    if (gs.gap <= opts.degeneracy_tol * std::max(1.0, std::abs(gs.energy)))
        throw DegenerateGroundState("ground state degenerate within tolerance (gap " +
                                    std::to_string(gs.gap) + ")");
    return gs;
}

Vector solve_shifted(const SparseOperator& op, const GroundState& gs, const Vector& rhs,
                     const SolverOptions& opts, double* residual_out) {
    const std::int64_t n = op.dimension();
    if (rhs.size() != n || gs.vector.size() != n)
        throw BasisMismatch("solve_shifted: dimension mismatch");

    const double rhs_norm = rhs.norm();
    if (rhs_norm == 0.0) {
        if (residual_out)
            *residual_out = 0.0;
        return Vector::Zero(n);
    }
    if (std::abs(gs.vector.dot(rhs)) > 1e-10 * rhs_norm)
        throw ProjectionError("solve_shifted: rhs is not orthogonal to the ground state");

    const Vector& psi0 = gs.vector;
    auto project = [&psi0](Vector& v) { v -= psi0.dot(v) * psi0; };
    auto apply_a = [&](const Vector& v) {
        Vector w = op.apply(v) - gs.energy * v;
        project(w);
        return w;
    };

    Vector b = rhs;
    project(b);
    const double bnorm = b.norm();

    Vector x = Vector::Zero(n);
    Vector r = b;
    Vector p = r;
    double rs = std::real(r.dot(r));
    const double tol2 = opts.cg_tol * opts.cg_tol * bnorm * bnorm;
    const int max_iter = static_cast<int>(std::min<std::int64_t>(opts.cg_max_iter, 4 * n + 32));
    for (int it = 0; it < max_iter && rs > tol2; ++it) {
        Vector ap = apply_a(p);
        const double p_ap = std::real(p.dot(ap));
        if (p_ap <= 0.0)
            throw NoConvergence("solve_shifted: operator lost positive definiteness");
        const double alpha = rs / p_ap;
        x += alpha * p;
        r -= alpha * ap;
        project(x);
        project(r);
        const double rs_new = std::real(r.dot(r));
        p = r + (rs_new / rs) * p;
        rs = rs_new;
    }
    if (rs > tol2)
        throw NoConvergence("solve_shifted: CG did not reach tolerance");

    const double true_resid = (apply_a(x) - b).norm() / bnorm;
    if (true_resid > 1e-10)
        throw NoConvergence("solve_shifted: verified residual above 1e-10");
    if (residual_out)
        *residual_out = true_resid;
    return x;
}

std::vector<double> lanczos_lowest(const SparseOperator& op, int k, const SolverOptions& opts) {
    std::vector<double> values;
    std::vector<Vector> deflate;
    for (int i = 0; i < k; ++i) {
        LanczosResult res = lanczos_lowest_deflated(op, deflate, opts);
        values.push_back(res.value);
        deflate.push_back(std::move(res.vector));
    }
    return values;
}

} // namespace lde
