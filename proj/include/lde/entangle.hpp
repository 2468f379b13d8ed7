#pragma once

#include <optional>
#include <vector>

#include "lde/effham.hpp"

namespace lde {

// Two-probe density matrix (d^2 x d^2): Hermitian, unit trace, PSD to 1e-12.
struct ProbePairState {
    DenseMatrix rho;

    void validate() const;
    int probe_dimension() const;
};

enum class TransposeSide { a, b };

// Negativity N = (||rho^{T}||_1 - 1)/2 = |sum of negative eigenvalues of the
// partial transpose|; 1/2 for a two-qubit maximally entangled state.
double negativity(const ProbePairState& state, TransposeSide side = TransposeSide::b);

// Gibbs state exp(-beta H) / Tr from the exact small eigendecomposition.
ProbePairState thermal_state(const EffectiveProbeHamiltonian& h_eff, double beta);
ProbePairState thermal_state(const DenseMatrix& h_eff_matrix, double beta);

// Heisenberg probe pair H = J tau_a . tau_b (Pauli normalization).
DenseMatrix heisenberg_pair_matrix(double coupling_j);

struct ThermalPoint {
    double beta = 0.0;
    double negativity = 0.0;
};

struct ThermalCurve {
    std::vector<ThermalPoint> points;
    std::optional<double> threshold_beta; // beta*, entanglement onset
};

// Smallest beta at which thermal-state negativity becomes positive, by
// bracketing and bisection on the minimal partial-transpose eigenvalue
// (absolute tolerance 1e-8 in beta). For H = J tau.tau with J > 0 this is
// ln(3) / (4 J). Raises NeverEntangled when no beta produces entanglement.
double entanglement_threshold(const EffectiveProbeHamiltonian& h_eff);
double entanglement_threshold(const DenseMatrix& h_eff_matrix);

ThermalCurve thermal_scan(const DenseMatrix& h_eff_matrix, const std::vector<double>& betas,
                          bool with_threshold = true);

} // namespace lde
