#include "lde/effham.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lde {

namespace {

DenseMatrix kron_dd(const DenseMatrix& x, const DenseMatrix& y) {
    const int dx = static_cast<int>(x.rows());
    const int dy = static_cast<int>(y.rows());
    DenseMatrix out(dx * dy, dx * dy);
    for (int i = 0; i < dx; ++i)
        for (int j = 0; j < dx; ++j)
            out.block(i * dy, j * dy, dy, dy) = x(i, j) * y;
    return out;
}

void require_hermitian_labels(const ProbeSpec& probes) {
    for (const auto& term : probes.couplings) {
        const bool ok_chain = term.chain_op == SpinOp::Sx || term.chain_op == SpinOp::Sy ||
                              term.chain_op == SpinOp::Sz;
        const bool ok_probe = term.probe_op == SpinOp::Sx || term.probe_op == SpinOp::Sy ||
                              term.probe_op == SpinOp::Sz;
        if (!ok_chain || !ok_probe)
            throw Error("build_effective_hamiltonian: coupling terms must use Hermitian "
                        "labels (Sx, Sy, Sz)");
    }
}

} // namespace

DenseMatrix EffectiveProbeHamiltonian::reassemble() const {
    const int d = probe_dimension;
    const DenseMatrix id = DenseMatrix::Identity(d, d);
    DenseMatrix m = scalar_part * DenseMatrix::Identity(d * d, d * d);
    m += kron_dd(local_a, id);
    m += kron_dd(id, local_b);
    for (int u = 0; u < nonlocal_coefficients.rows(); ++u)
        for (int v = 0; v < nonlocal_coefficients.cols(); ++v)
            m += nonlocal_coefficients(u, v) *
                 kron_dd(probe_a_ops[static_cast<std::size_t>(u)],
                         probe_b_ops[static_cast<std::size_t>(v)]);
    return m;
}

double EffectiveProbeHamiltonian::local_a_norm() const {
    return local_a.size() == 0 ? 0.0 : local_a.cwiseAbs().maxCoeff();
}

double EffectiveProbeHamiltonian::local_b_norm() const {
    return local_b.size() == 0 ? 0.0 : local_b.cwiseAbs().maxCoeff();
}

double EffectiveProbeHamiltonian::anisotropy() const {
    const auto& k = nonlocal_coefficients;
    if (k.rows() != k.cols() || k.rows() == 0)
        return 0.0;
    const double jab = k.trace() / static_cast<double>(k.rows());
    return (k - jab * Eigen::MatrixXd::Identity(k.rows(), k.cols())).cwiseAbs().maxCoeff();
}

EffectiveProbeHamiltonian build_effective_hamiltonian(const ChainSpec& chain,
                                                      const ProbeSpec& probes,
                                                      const EffHamOptions& opts) {
    chain.validate();
    probes.validate(chain.length);
    require_hermitian_labels(probes);

    const SpinBasis basis = build_basis(chain.length, chain.local_spin());
    const SparseOperator h0 = build_chain_hamiltonian(chain, basis);
    const int d = probes.probe_dimension;
    const int nterms = static_cast<int>(probes.couplings.size());

    EffectiveProbeHamiltonian eff;
    eff.probe_dimension = d;
    eff.method = opts.method;

    // R(t1, t2) = <0| O~_{t1} Q (H - E0)^{-1} Q O~_{t2} |0> per ordered term
    // pair, from either the full spectrum or cached correction vectors.
    Eigen::MatrixXcd resolvent(nterms, nterms);
    double worst_resid = 0.0;

    std::map<std::pair<int, SpinOp>, int> distinct; // (site, op) -> slot
    std::vector<Vector> connected, corrected;       // per slot
    std::vector<int> slot_of_term(static_cast<std::size_t>(nterms));

    if (opts.method == ResponseMethod::correction_vector) {
        const GroundState gs = lanczos_ground(h0, opts.solver);
        eff.ground_energy = gs.energy;
        eff.gap = gs.gap;
        for (int t = 0; t < nterms; ++t) {
            const auto& term = probes.couplings[static_cast<std::size_t>(t)];
            const auto key = std::make_pair(term.chain_site, term.chain_op);
            auto it = distinct.find(key);
            if (it == distinct.end()) {
                Vector y = site_operator(basis, term.chain_site, term.chain_op).apply(gs.vector);
                y -= gs.vector.dot(y) * gs.vector;
                double resid = 0.0;
                corrected.push_back(solve_shifted(h0, gs, y, opts.solver, &resid));
                connected.push_back(std::move(y));
                worst_resid = std::max(worst_resid, resid);
                it = distinct.emplace(key, static_cast<int>(connected.size()) - 1).first;
            }
            slot_of_term[static_cast<std::size_t>(t)] = it->second;
        }
        for (int t1 = 0; t1 < nterms; ++t1)
            for (int t2 = 0; t2 < nterms; ++t2)
                resolvent(t1, t2) =
                    connected[static_cast<std::size_t>(slot_of_term[static_cast<std::size_t>(t1)])]
                        .dot(corrected[static_cast<std::size_t>(
                            slot_of_term[static_cast<std::size_t>(t2)])]);
    } else {
        const SpectrumSlice spectrum = dense_spectrum(h0, opts.solver);
        const GroundState gs = ground_state_from_spectrum(spectrum, opts.solver);
        eff.ground_energy = gs.energy;
        eff.gap = gs.gap;
        const std::int64_t n = h0.dimension();
        Eigen::MatrixXcd amps(n, nterms); // <k|O~_t|0>
        for (int t = 0; t < nterms; ++t) {
            const auto& term = probes.couplings[static_cast<std::size_t>(t)];
            Vector y = site_operator(basis, term.chain_site, term.chain_op).apply(gs.vector);
            y -= gs.vector.dot(y) * gs.vector;
            amps.col(t) = spectrum.eigenvectors.adjoint() * y;
        }
        for (int t1 = 0; t1 < nterms; ++t1)
            for (int t2 = 0; t2 < nterms; ++t2) {
                Complex sum(0.0, 0.0);
                for (std::int64_t k = 1; k < n; ++k)
                    sum += std::conj(amps(k, t1)) * amps(k, t2) /
                           (spectrum.eigenvalues[static_cast<std::size_t>(k)] - gs.energy);
                resolvent(t1, t2) = sum;
            }
    }
    eff.residual = worst_resid;

    // assemble: ordered pair (t1, t2) contributes -g1 g2 R(t1, t2) times the
    // probe operator product P_{t1} P_{t2}
    std::vector<int> a_terms, b_terms;
    for (int t = 0; t < nterms; ++t)
        (probes.couplings[static_cast<std::size_t>(t)].probe == 'a' ? a_terms : b_terms)
            .push_back(t);
    std::vector<DenseMatrix> probe_mats(static_cast<std::size_t>(nterms));
    for (int t = 0; t < nterms; ++t)
        probe_mats[static_cast<std::size_t>(t)] =
            probe_operator_matrix(probes, probes.couplings[static_cast<std::size_t>(t)].probe_op);

    DenseMatrix m_a = DenseMatrix::Zero(d, d);
    DenseMatrix m_b = DenseMatrix::Zero(d, d);
    const int na = static_cast<int>(a_terms.size());
    const int nb = static_cast<int>(b_terms.size());
    Eigen::MatrixXd k_matrix = Eigen::MatrixXd::Zero(na, nb);

    auto strength = [&](int t) {
        return probes.couplings[static_cast<std::size_t>(t)].strength;
    };
    for (int t1 = 0; t1 < nterms; ++t1) {
        const char p1 = probes.couplings[static_cast<std::size_t>(t1)].probe;
        for (int t2 = 0; t2 < nterms; ++t2) {
            const char p2 = probes.couplings[static_cast<std::size_t>(t2)].probe;
            const Complex w = -strength(t1) * strength(t2) * resolvent(t1, t2);
            if (p1 == 'a' && p2 == 'a')
                m_a += w * (probe_mats[static_cast<std::size_t>(t1)] *
                            probe_mats[static_cast<std::size_t>(t2)]);
            else if (p1 == 'b' && p2 == 'b')
                m_b += w * (probe_mats[static_cast<std::size_t>(t1)] *
                            probe_mats[static_cast<std::size_t>(t2)]);
            else {
                const int u = static_cast<int>(
                    std::find(a_terms.begin(), a_terms.end(), p1 == 'a' ? t1 : t2) -
                    a_terms.begin());
                const int v = static_cast<int>(
                    std::find(b_terms.begin(), b_terms.end(), p1 == 'b' ? t1 : t2) -
                    b_terms.begin());
                // Hermitian term operators make R(t2, t1) = conj R(t1, t2),
                // so the accumulated K is real
                k_matrix(u, v) += std::real(w);
            }
        }
    }

    eff.probe_a_ops.reserve(static_cast<std::size_t>(na));
    for (int t : a_terms)
        eff.probe_a_ops.push_back(probe_mats[static_cast<std::size_t>(t)]);
    eff.probe_b_ops.reserve(static_cast<std::size_t>(nb));
    for (int t : b_terms)
        eff.probe_b_ops.push_back(probe_mats[static_cast<std::size_t>(t)]);
    eff.nonlocal_coefficients = std::move(k_matrix);

    eff.scalar_part = std::real(m_a.trace() + m_b.trace()) / d;
    eff.local_a = m_a - (m_a.trace() / static_cast<double>(d)) * DenseMatrix::Identity(d, d);
    eff.local_b = m_b - (m_b.trace() / static_cast<double>(d)) * DenseMatrix::Identity(d, d);
    eff.matrix = eff.reassemble();

    if (na == nb && na > 0) {
        const double jab = eff.nonlocal_coefficients.trace() / na;
        if (eff.anisotropy() <= opts.isotropy_tol * std::max(std::abs(jab), 1e-300))
            eff.isotropic_coupling = jab;
        else if (eff.nonlocal_coefficients.cwiseAbs().maxCoeff() == 0.0)
            eff.isotropic_coupling = 0.0;
    }
    return eff;
}

std::vector<ValidationRow> validate_against_exact(const ChainSpec& chain, const ProbeSpec& probes,
                                                  const std::vector<double>& strengths,
                                                  const EffHamOptions& opts) {
    if (probes.probe_dimension != 2)
        throw Error("validate_against_exact: defined for two-level probes");
    const EffectiveProbeHamiltonian eff = build_effective_hamiltonian(chain, probes, opts);
    if (!eff.isotropic_coupling)
        throw Error("validate_against_exact: effective coupling is not isotropic; "
                    "use Heisenberg probe couplings");
    const double jab_unit = *eff.isotropic_coupling;

    const std::int64_t chain_dim = build_basis(chain.length, chain.local_spin()).dimension();
    std::vector<ValidationRow> rows;
    rows.reserve(strengths.size());
    for (double jp : strengths) {
        const SparseOperator h = build_full_hamiltonian(chain, probes, jp);
        ValidationRow row;
        row.probe_strength = jp;
        row.predicted_splitting = 4.0 * jp * jp * jab_unit;

        std::vector<double> low;
        Vector ground;
        if (h.dimension() <= opts.solver.dense_cap) {
            const SpectrumSlice s = dense_spectrum(h, opts.solver);
            low.assign(s.eigenvalues.begin(), s.eigenvalues.begin() + 4);
            ground = s.eigenvectors.col(0);
        } else {
            low = lanczos_lowest(h, 4, opts.solver);
        }
        row.exact_splitting = (low[1] + low[2] + low[3]) / 3.0 - low[0];
        if (std::abs(row.predicted_splitting) > 1e-15)
            row.relative_deviation =
                std::abs(row.exact_splitting - row.predicted_splitting) /
                std::abs(row.predicted_splitting);
        else
            row.relative_deviation = std::abs(row.exact_splitting) < 1e-12 ? 0.0 : INFINITY;

        if (ground.size() > 0) {
            const DenseMatrix rho = probe_reduced_density(ground, chain_dim, 2);
            Vector singlet = Vector::Zero(4);
            singlet[1] = 1.0 / std::sqrt(2.0);
            singlet[2] = -1.0 / std::sqrt(2.0);
            row.singlet_weight = std::real(singlet.dot(rho * singlet));
        }
        rows.push_back(row);
    }
    return rows;
}

DenseMatrix probe_reduced_density(const Vector& state, std::int64_t chain_dim, int probe_dim) {
    const int dd = probe_dim * probe_dim;
    if (state.size() != chain_dim * dd)
        throw BasisMismatch("probe_reduced_density: dimension mismatch");
    DenseMatrix rho = DenseMatrix::Zero(dd, dd);
    for (std::int64_t c = 0; c < chain_dim; ++c)
        for (int i = 0; i < dd; ++i)
            for (int j = 0; j < dd; ++j)
                rho(i, j) += state[c * dd + i] * std::conj(state[c * dd + j]);
    return rho;
}

} // namespace lde
