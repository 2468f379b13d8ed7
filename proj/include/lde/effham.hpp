#pragma once

#include <optional>
#include <vector>

#include "lde/model.hpp"
#include "lde/response.hpp"

namespace lde {

// Second-order effective Hamiltonian on the probe pair,
// H^(ab) = -sum_{k>0} <U P_k U>_0 / (E_k - E_0), decomposed as
// matrix = scalar * 1 + local_a (x) 1 + 1 (x) local_b + nonlocal,
// nonlocal = sum_{uv} K(u, v) A_u (x) B_v over the probe-a terms u and
// probe-b terms v of the coupling list (coupling strengths folded into K).
struct EffectiveProbeHamiltonian {
    DenseMatrix matrix;  // d^2 x d^2, Hermitian, units J
    double scalar_part = 0.0;
    DenseMatrix local_a; // d x d, traceless Hermitian
    DenseMatrix local_b;
    Eigen::MatrixXd nonlocal_coefficients;                // K, n_a x n_b
    std::vector<DenseMatrix> probe_a_ops, probe_b_ops;    // A_u, B_v in K's order
    std::optional<double> isotropic_coupling;             // J_ab when K ~ J_ab * 1

    int probe_dimension = 2;
    double ground_energy = 0.0;
    double gap = 0.0;
    ResponseMethod method = ResponseMethod::correction_vector;
    double residual = 0.0;

    DenseMatrix reassemble() const;
    double local_a_norm() const;
    double local_b_norm() const;
    // max |K - J_ab 1| entry over the K matrix (0 when K is not square)
    double anisotropy() const;
};

struct EffHamOptions {
    SolverOptions solver;
    ResponseMethod method = ResponseMethod::correction_vector;
    // relative tolerance for promoting K to an isotropic J_ab
    double isotropy_tol = 1e-9;
};

EffectiveProbeHamiltonian build_effective_hamiltonian(const ChainSpec& chain,
                                                      const ProbeSpec& probes,
                                                      const EffHamOptions& opts = {});

// Exact-diagonalization check of the prediction: for each scale J_p the probe
// multiplet splitting of chain + probes is compared with 4 * J_p^2 * J_ab
// (Pauli convention: J tau.tau splits singlet/triplet by 4J).
struct ValidationRow {
    double probe_strength = 0.0;   // J_p
    double exact_splitting = 0.0;  // E_triplet - E_singlet of the full system
    double predicted_splitting = 0.0;
    double relative_deviation = 0.0;
    double singlet_weight = 0.0;   // <s|rho_ab|s> of the exact ground state
};

std::vector<ValidationRow> validate_against_exact(const ChainSpec& chain, const ProbeSpec& probes,
                                                  const std::vector<double>& strengths,
                                                  const EffHamOptions& opts = {});

// Reduced density matrix of the probe pair in a composite-space state.
DenseMatrix probe_reduced_density(const Vector& state, std::int64_t chain_dim, int probe_dim);

} // namespace lde
