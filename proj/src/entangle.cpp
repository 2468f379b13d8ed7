#include "lde/entangle.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace lde {

namespace {

int probe_dim_of(const DenseMatrix& rho) {
    const int dd = static_cast<int>(rho.rows());
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dd))));
    if (d * d != dd || rho.cols() != dd)
        throw InvalidState("ProbePairState: matrix must be d^2 x d^2");
    return d;
}

DenseMatrix partial_transpose(const DenseMatrix& rho, int d, TransposeSide side) {
    DenseMatrix pt(rho.rows(), rho.cols());
    for (int ia = 0; ia < d; ++ia)
        for (int ib = 0; ib < d; ++ib)
            for (int ja = 0; ja < d; ++ja)
                for (int jb = 0; jb < d; ++jb) {
                    // row = probe-a digit * d + probe-b digit
                    if (side == TransposeSide::b)
                        pt(ia * d + jb, ja * d + ib) = rho(ia * d + ib, ja * d + jb);
                    else
                        pt(ja * d + ib, ia * d + jb) = rho(ia * d + ib, ja * d + jb);
                }
    return pt;
}

double min_pt_eigenvalue(const DenseMatrix& rho, int d) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(partial_transpose(rho, d, TransposeSide::b));
    return es.eigenvalues().minCoeff();
}

} // namespace

void ProbePairState::validate() const {
    const int d = probe_dim_of(rho);
    (void)d;
    if (std::abs(std::real(rho.trace()) - 1.0) > 1e-12 || std::abs(std::imag(rho.trace())) > 1e-12)
        throw InvalidState("ProbePairState: trace must be 1");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidState("ProbePairState: matrix must be Hermitian");
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-12)
        throw InvalidState("ProbePairState: matrix must be positive semidefinite");
}

int ProbePairState::probe_dimension() const { return probe_dim_of(rho); }

double negativity(const ProbePairState& state, TransposeSide side) {
    state.validate();
    const int d = state.probe_dimension();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(partial_transpose(state.rho, d, side));
    double total = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        total += std::min(0.0, es.eigenvalues()[i]);
    return -total;
}

ProbePairState thermal_state(const DenseMatrix& h_eff_matrix, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw Error("thermal_state: beta must be finite and >= 0");
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h_eff_matrix);
    const Eigen::VectorXd energies = es.eigenvalues();
    const double e_min = energies.minCoeff();
    Eigen::VectorXd weights(energies.size());
    for (int i = 0; i < energies.size(); ++i)
        weights[i] = std::exp(-beta * (energies[i] - e_min));
    weights /= weights.sum();
    ProbePairState state;
    state.rho = es.eigenvectors() * weights.asDiagonal() * es.eigenvectors().adjoint();
    return state;
}

ProbePairState thermal_state(const EffectiveProbeHamiltonian& h_eff, double beta) {
    return thermal_state(h_eff.matrix, beta);
}

DenseMatrix heisenberg_pair_matrix(double coupling_j) {
    DenseMatrix h = DenseMatrix::Zero(4, 4);
    for (SpinOp op : {SpinOp::Sx, SpinOp::Sy, SpinOp::Sz}) {
        const DenseMatrix tau = 2.0 * local_spin_matrix(LocalSpin::half, op);
        DenseMatrix t2(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                t2.block(i * 2, j * 2, 2, 2) = tau(i, j) * tau;
        h += coupling_j * t2;
    }
    return h;
}

double entanglement_threshold(const DenseMatrix& h_eff_matrix) {
    const int d = probe_dim_of(h_eff_matrix);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h_eff_matrix);
    const double range = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
    if (range < 1e-14)
        throw NeverEntangled("entanglement_threshold: flat spectrum, thermal states "
                             "stay maximally mixed");

    // beta -> infinity limit: Gibbs state collapses onto the ground manifold
    DenseMatrix gs_proj = DenseMatrix::Zero(h_eff_matrix.rows(), h_eff_matrix.cols());
    int count = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] - es.eigenvalues().minCoeff() < 1e-12 * std::max(1.0, range)) {
            gs_proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
            ++count;
        }
    gs_proj /= count;
    if (min_pt_eigenvalue(gs_proj, d) > -1e-12)
        throw NeverEntangled("entanglement_threshold: the zero-temperature state is "
                             "already separable");

    // bracket [beta_lo separable, beta_hi entangled], then bisect the minimal
    // partial-transpose eigenvalue crossing
    double beta_lo = 0.0;
    double beta_hi = 1.0 / range;
    while (min_pt_eigenvalue(thermal_state(h_eff_matrix, beta_hi).rho, d) > 0.0) {
        beta_lo = beta_hi;
        beta_hi *= 2.0;
        if (beta_hi > 1e9 / range)
            throw NeverEntangled("entanglement_threshold: no entangled thermal state found");
    }
    while (beta_hi - beta_lo > 1e-8) {
        const double mid = 0.5 * (beta_lo + beta_hi);
        if (min_pt_eigenvalue(thermal_state(h_eff_matrix, mid).rho, d) > 0.0)
            beta_lo = mid;
        else
            beta_hi = mid;
    }
    return 0.5 * (beta_lo + beta_hi);
}

double entanglement_threshold(const EffectiveProbeHamiltonian& h_eff) {
    return entanglement_threshold(h_eff.matrix);
}

ThermalCurve thermal_scan(const DenseMatrix& h_eff_matrix, const std::vector<double>& betas,
                          bool with_threshold) {
    ThermalCurve curve;
    curve.points.reserve(betas.size());
    for (double beta : betas)
        curve.points.push_back({beta, negativity(thermal_state(h_eff_matrix, beta))});
    if (with_threshold) {
        try {
            curve.threshold_beta = entanglement_threshold(h_eff_matrix);
        } catch (const NeverEntangled&) {
            curve.threshold_beta.reset();
        }
    }
    return curve;
}

} // namespace lde
