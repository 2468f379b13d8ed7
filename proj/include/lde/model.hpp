#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lde/operators.hpp"

namespace lde {

enum class ChainModel { heisenberg_spin_half, bilinear_biquadratic_spin1 };
enum class Boundary { open, periodic };

// Chain Hamiltonian description. Energies are in units of the nearest-neighbor
// exchange J == 1. For the spin-1 model H = sum_i [S_i.S_{i+1} +
// beta (S_i.S_{i+1})^2]; beta = 1/3 is the AKLT point.
struct ChainSpec {
    ChainModel model = ChainModel::heisenberg_spin_half;
    int length = 2;
    double biquadratic_beta = 1.0 / 3.0;
    Boundary boundary = Boundary::open;

    LocalSpin local_spin() const {
        return model == ChainModel::heisenberg_spin_half ? LocalSpin::half : LocalSpin::one;
    }
    void validate() const;
};

enum class ProbeNorm { pauli, spin_half };

// One term of Eq.-(1)-style coupling: strength * O_site^alpha (x) P_probe.
struct CouplingTerm {
    int chain_site = 1;
    SpinOp chain_op = SpinOp::Sz;
    char probe = 'a'; // 'a' or 'b'
    SpinOp probe_op = SpinOp::Sz;
    double strength = 1.0;
};

struct ProbeSpec {
    int site_m = 1;
    int site_n = 2;
    std::vector<CouplingTerm> couplings;
    int probe_dimension = 2;
    ProbeNorm probe_norm = ProbeNorm::pauli;

    void validate(int chain_length) const;

    // phys. spin of the probe level structure (d = 2s + 1)
    double probe_spin() const { return 0.5 * (probe_dimension - 1); }
};

// Heisenberg special case V = J_a S_m . tau_a + J_b S_n . tau_b.
ProbeSpec heisenberg_probes(int site_m, int site_n, double j_a, double j_b,
                            ProbeNorm norm = ProbeNorm::pauli);

// Probe-space matrix for one label under the given normalization. Pauli
// normalization (tau with eigenvalues +-1) is defined for d = 2 only.
DenseMatrix probe_operator_matrix(const ProbeSpec& probes, SpinOp op);

SparseOperator build_chain_hamiltonian(const ChainSpec& spec, const SpinBasis& basis);
SparseOperator build_chain_hamiltonian(const ChainSpec& spec,
                                       std::optional<double> sector_sz = std::nullopt);

// Nearest-neighbor bond matrix (d^2 x d^2) used by build_chain_hamiltonian:
// S.S for spin-1/2, S.S + beta (S.S)^2 for spin-1.
DenseMatrix bond_matrix(const ChainSpec& spec);

// H = H_0 (x) 1 (x) 1 + scale * V on chain (x) probe_a (x) probe_b.
// The chain factor always uses the full (sector-free) chain basis.
SparseOperator build_full_hamiltonian(const ChainSpec& chain, const ProbeSpec& probes,
                                      double scale);

// Probe coupling V alone on the composite space (unit scale).
SparseOperator build_probe_coupling(const ChainSpec& chain, const ProbeSpec& probes);

// Total Sz of chain + probes (probes counted in spin units) on the composite
// space; useful for symmetry checks.
SparseOperator composite_total_sz(const ChainSpec& chain, const ProbeSpec& probes);

} // namespace lde
