#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lde/model.hpp"
#include "lde/solver.hpp"
#include "support/oracles.hpp"

using namespace lde;

TEST_CASE("basis dimensions") {
    CHECK(build_basis(2, LocalSpin::half).dimension() == 4);
    CHECK(build_basis(2, LocalSpin::half, 0.0).dimension() == 2);
    CHECK(build_basis(4, LocalSpin::one, 0.0).dimension() == 19);
    CHECK(build_basis(4, LocalSpin::one, 0.0).dimension() ==
          testing::brute_force_sector_dimension(4, 3, 1.0, 0.0));
    // cross-check a few more sectors against brute force
    for (double sz : {-2.0, -1.0, 1.0, 3.0})
        CHECK(build_basis(4, LocalSpin::one, sz).dimension() ==
              testing::brute_force_sector_dimension(4, 3, 1.0, sz));
    CHECK(build_basis(6, LocalSpin::half, 1.0).dimension() ==
          testing::brute_force_sector_dimension(6, 2, 0.5, 1.0));
}

TEST_CASE("basis index bijection") {
    const SpinBasis full = build_basis(3, LocalSpin::one);
    for (std::int64_t i = 0; i < full.dimension(); ++i)
        CHECK(full.index_of_code(full.code_of_index(i)) == i);

    const SpinBasis sector = build_basis(6, LocalSpin::half, 0.0);
    for (std::int64_t i = 0; i < sector.dimension(); ++i) {
        const std::uint64_t code = sector.code_of_index(i);
        CHECK(sector.index_of_code(code) == i);
        CHECK(sector.sz_of_code(code) == doctest::Approx(0.0));
    }
    // codes outside the sector resolve to -1
    CHECK(sector.index_of_code(0) == -1); // all spins up has Sz = 3
}

TEST_CASE("empty sector is rejected") {
    CHECK_THROWS_AS(build_basis(2, LocalSpin::half, 5.0), EmptySector);
    CHECK_THROWS_AS(build_basis(3, LocalSpin::half, 0.0), EmptySector);
}

TEST_CASE("site operators") {
    const SpinBasis one_site = build_basis(1, LocalSpin::half);
    const SparseOperator sz = site_operator(one_site, 1, SpinOp::Sz);
    CHECK(sz.dense()(0, 0).real() == doctest::Approx(0.5));
    CHECK(sz.dense()(1, 1).real() == doctest::Approx(-0.5));

    // [Sx, Sy] = i Sz
    const SparseMatrix sx = site_operator(one_site, 1, SpinOp::Sx).entries();
    const SparseMatrix sy = site_operator(one_site, 1, SpinOp::Sy).entries();
    const DenseMatrix comm = DenseMatrix(sx * sy - sy * sx) - Complex(0, 1) * sz.dense();
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-14);

    const SpinBasis spin1 = build_basis(1, LocalSpin::one);
    const DenseMatrix sz1 = site_operator(spin1, 1, SpinOp::Sz).dense();
    CHECK(sz1(0, 0).real() == doctest::Approx(1.0));
    CHECK(sz1(1, 1).real() == doctest::Approx(0.0));
    CHECK(sz1(2, 2).real() == doctest::Approx(-1.0));

    for (SpinOp op : {SpinOp::Sx, SpinOp::Sy, SpinOp::Sz})
        CHECK(site_operator(build_basis(3, LocalSpin::half), 2, op).is_hermitian());
}

TEST_CASE("sector basis permits only Sz") {
    const SpinBasis sector = build_basis(4, LocalSpin::half, 0.0);
    CHECK_NOTHROW(site_operator(sector, 2, SpinOp::Sz));
    CHECK_THROWS_AS(site_operator(sector, 2, SpinOp::Sp), SectorViolation);
    CHECK_THROWS_AS(site_operator(sector, 2, SpinOp::Sx), SectorViolation);
}

TEST_CASE("two-site Heisenberg chain spectrum") {
    ChainSpec spec;
    spec.length = 2;
    const SpectrumSlice s = dense_spectrum(build_chain_hamiltonian(spec));
    CHECK(testing::spectra_match(s.eigenvalues, {-0.75, 0.25, 0.25, 0.25}, 1e-12));
}

TEST_CASE("three-site open chain spectrum from total-spin recoupling") {
    ChainSpec spec;
    spec.length = 3;
    const SpectrumSlice s = dense_spectrum(build_chain_hamiltonian(spec));
    CHECK(testing::spectra_match(s.eigenvalues, {-1, -1, 0, 0, 0.5, 0.5, 0.5, 0.5}, 1e-12));
}

TEST_CASE("spin-1 AKLT two-site spectrum") {
    ChainSpec spec;
    spec.model = ChainModel::bilinear_biquadratic_spin1;
    spec.length = 2;
    spec.biquadratic_beta = 1.0 / 3.0;
    const SpectrumSlice s = dense_spectrum(build_chain_hamiltonian(spec));
    const double a = -2.0 / 3.0, b = 4.0 / 3.0;
    CHECK(testing::spectra_match(s.eigenvalues, {a, a, a, a, b, b, b, b, b}, 1e-12));
}

TEST_CASE("chain Hamiltonian symmetries") {
    for (auto boundary : {Boundary::open, Boundary::periodic}) {
        ChainSpec spec;
        spec.length = 5;
        spec.boundary = boundary;
        const SpinBasis basis = build_basis(spec.length, spec.local_spin());
        const SparseOperator h = build_chain_hamiltonian(spec, basis);
        CHECK(h.hermiticity_defect() <= 1e-12);
        CHECK(testing::commutator_norm(h.entries(),
                                       total_sz_operator(basis).entries()) <= 1e-12);
        CHECK(testing::commutator_norm(h.entries(), testing::total_spin_squared(basis)) <= 1e-12);
    }
    ChainSpec aklt;
    aklt.model = ChainModel::bilinear_biquadratic_spin1;
    aklt.length = 3;
    aklt.boundary = Boundary::periodic;
    const SpinBasis basis = build_basis(3, LocalSpin::one);
    const SparseOperator h = build_chain_hamiltonian(aklt, basis);
    CHECK(h.hermiticity_defect() <= 1e-12);
    CHECK(testing::commutator_norm(h.entries(), testing::total_spin_squared(basis)) <= 1e-12);
}

TEST_CASE("sector decomposition reproduces the full spectrum") {
    ChainSpec spec;
    spec.length = 6;
    spec.boundary = Boundary::periodic;
    const SpectrumSlice full = dense_spectrum(build_chain_hamiltonian(spec));

    std::vector<double> collected;
    for (int twice_sz = -6; twice_sz <= 6; twice_sz += 2) {
        const SpinBasis sector = build_basis(6, LocalSpin::half, twice_sz / 2.0);
        const SpectrumSlice s = dense_spectrum(build_chain_hamiltonian(spec, sector));
        collected.insert(collected.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    }
    CHECK(testing::spectra_match(full.eigenvalues, collected, 1e-10));
}

TEST_CASE("periodic chain is invariant under the cyclic shift") {
    ChainSpec spec;
    spec.length = 6;
    spec.boundary = Boundary::periodic;
    const SpinBasis basis = build_basis(6, LocalSpin::half);
    const SparseMatrix h = build_chain_hamiltonian(spec, basis).entries();
    const SparseMatrix p = testing::cyclic_shift_matrix(basis);
    const SparseMatrix conj = SparseMatrix(p * h) * SparseMatrix(p.adjoint());
    CHECK(testing::max_abs_entry(conj - h) <= 1e-12);

    // the shift moves site operators forward
    const SparseMatrix sz2 = site_operator(basis, 2, SpinOp::Sz).entries();
    const SparseMatrix sz3 = site_operator(basis, 3, SpinOp::Sz).entries();
    const SparseMatrix moved = SparseMatrix(p * sz2) * SparseMatrix(p.adjoint());
    CHECK(testing::max_abs_entry(moved - sz3) <= 1e-14);
}

TEST_CASE("full Hamiltonian with probes") {
    ChainSpec chain;
    chain.length = 2;
    const ProbeSpec probes = heisenberg_probes(1, 2, 1.0, 1.0);

    const SparseOperator h = build_full_hamiltonian(chain, probes, 0.1);
    CHECK(h.dimension() == 16);
    CHECK(h.hermiticity_defect() <= 1e-12);
    CHECK(testing::commutator_norm(h.entries(),
                                   composite_total_sz(chain, probes).entries()) <= 1e-12);

    // scale = 0: chain spectrum, every level 4-fold degenerate
    const SparseOperator h0 = build_full_hamiltonian(chain, probes, 0.0);
    const SpectrumSlice s = dense_spectrum(h0);
    std::vector<double> expected;
    for (double e : {-0.75, 0.25, 0.25, 0.25})
        for (int copy = 0; copy < 4; ++copy)
            expected.push_back(e);
    CHECK(testing::spectra_match(s.eigenvalues, expected, 1e-12));
}

TEST_CASE("pauli vs spin-half probe normalization differs by factor 2 per operator") {
    ChainSpec chain;
    chain.length = 2;
    const SparseMatrix v_pauli =
        build_probe_coupling(chain, heisenberg_probes(1, 2, 1.0, 1.0, ProbeNorm::pauli)).entries();
    const SparseMatrix v_half =
        build_probe_coupling(chain, heisenberg_probes(1, 2, 1.0, 1.0, ProbeNorm::spin_half))
            .entries();
    CHECK(testing::max_abs_entry(v_pauli - SparseMatrix(2.0 * v_half)) <= 1e-14);
}

TEST_CASE("probe spec validation") {
    ChainSpec chain;
    chain.length = 4;
    ProbeSpec bad = heisenberg_probes(1, 9, 1.0, 1.0);
    CHECK_THROWS_AS(build_full_hamiltonian(chain, bad, 1.0), Error);

    ProbeSpec same = heisenberg_probes(2, 2, 1.0, 1.0);
    CHECK_THROWS_AS(build_full_hamiltonian(chain, same, 1.0), Error);
}

TEST_CASE("basis mismatch is detected") {
    const SparseOperator a = site_operator(build_basis(2, LocalSpin::half), 1, SpinOp::Sz);
    SparseOperator b = site_operator(build_basis(3, LocalSpin::half), 1, SpinOp::Sz);
    CHECK_THROWS_AS(b += a, BasisMismatch);
}
