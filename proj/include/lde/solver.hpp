#pragma once

#include <vector>

#include "lde/operators.hpp"

namespace lde {

struct SolverOptions {
    double lanczos_tol = 1e-12;
    int lanczos_max_iter = 600;
    double cg_tol = 1e-12;
    int cg_max_iter = 20000;
    std::int64_t dense_cap = 8192;
    // ground states closer than degeneracy_tol * max(1, |E0|) are rejected
    double degeneracy_tol = 1e-8;
    std::uint64_t seed = 0x6c6465; // start-vector seed, fixed for reproducibility
};

struct GroundState {
    double energy = 0.0; // E_0, units J
    Vector vector;       // unit norm
    double residual = 0.0;
    double gap = 0.0;    // E_1 - E_0, units J
};

struct SpectrumSlice {
    std::vector<double> eigenvalues; // ascending
    DenseMatrix eigenvectors;        // orthonormal columns, same order
};

// Complete spectrum by dense diagonalization; rejects dimensions above
// opts.dense_cap.
SpectrumSlice dense_spectrum(const SparseOperator& op, const SolverOptions& opts = {});

// Lowest eigenpair by Lanczos with full reorthogonalization. The gap is
// obtained from a second, deflated run so exact degeneracies are detected
// reliably; a degenerate ground level raises DegenerateGroundState.
GroundState lanczos_ground(const SparseOperator& op, const SolverOptions& opts = {});

// Ground state taken from an already-computed dense spectrum (same contract
// as lanczos_ground, including the degeneracy check).
GroundState ground_state_from_spectrum(const SpectrumSlice& spectrum,
                                       const SolverOptions& opts = {});

// Solve Q (H - E0) Q x = Q rhs with Q = 1 - |psi0><psi0|, returning x with
// <psi0|x> = 0. The rhs must already be orthogonal to psi0 (to 1e-10 relative);
// conjugate gradients exploit positive definiteness of H - E0 on the Q
// subspace, re-projecting every iteration.
Vector solve_shifted(const SparseOperator& op, const GroundState& gs, const Vector& rhs,
                     const SolverOptions& opts = {}, double* residual_out = nullptr);

// Lowest k eigenvalues via repeated deflated Lanczos runs (ascending).
std::vector<double> lanczos_lowest(const SparseOperator& op, int k,
                                   const SolverOptions& opts = {});

} // namespace lde
