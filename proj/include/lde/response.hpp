#pragma once

#include <string>

#include "lde/solver.hpp"

namespace lde {

enum class ResponseMethod { lehmann, correction_vector };

// Zero-frequency connected response chi~_{m alpha; n beta}(0), units 1/J.
//
// Sign convention: chi~ > 0 means the mediated probe coupling is
// antiferromagnetic (probe singlet ground state); the two-site antiferromagnet
// anchor gives chi~_{1z;2z}(0) = +1/2.
struct ResponseValue {
    double value = 0.0;
    int site_m = 0;
    int site_n = 0;
    std::string label_m;
    std::string label_n;
    ResponseMethod method = ResponseMethod::lehmann;
    double residual = 0.0;
};

// chi~(0) = -sum_{k>0} [<0|Om~|k><k|On~|0> + <0|On~|k><k|Om~|0>] / (E_k - E_0)
// with O~ = O - <0|O|0> (connected subtraction). Needs the complete spectrum
// of the block containing the ground state; O_m, O_n must act within it.
ResponseValue chi0_lehmann(const SpectrumSlice& spectrum, const SparseOperator& o_m,
                           const SparseOperator& o_n, const SolverOptions& opts = {});

// Same quantity through correction vectors
// x_n = (H - E0)^{-1} Q On~ |0>, chi~ = -[<y_m|x_n> + <y_n|x_m>],
// avoiding the full spectrum.
ResponseValue chi0_correction_vector(const SparseOperator& hamiltonian, const GroundState& gs,
                                     const SparseOperator& o_m, const SparseOperator& o_n,
                                     const SolverOptions& opts = {});

// Correction-vector sweep helper: one solve per distinct operator, then all
// pairwise responses from inner products. Returned matrix element (i, j) is
// chi~ for (ops[i], ops[j]); site/label metadata is left to the caller.
Eigen::MatrixXd chi0_correction_vector_matrix(const SparseOperator& hamiltonian,
                                              const GroundState& gs,
                                              const std::vector<SparseOperator>& ops,
                                              const SolverOptions& opts = {},
                                              double* max_residual = nullptr);

} // namespace lde
