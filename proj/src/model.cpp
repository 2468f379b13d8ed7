#include "lde/model.hpp"

#include <cmath>

namespace lde {

void ChainSpec::validate() const {
    if (length < 2)
        throw Error("ChainSpec: length must be >= 2");
    if (!std::isfinite(biquadratic_beta))
        throw Error("ChainSpec: biquadratic_beta must be finite");
}

void ProbeSpec::validate(int chain_length) const {
    if (site_m < 1 || site_m > chain_length || site_n < 1 || site_n > chain_length)
        throw Error("ProbeSpec: probe sites must lie within the chain");
    if (site_m == site_n)
        throw Error("ProbeSpec: probe sites must differ");
    if (probe_dimension < 2)
        throw Error("ProbeSpec: probe dimension must be >= 2");
    if (probe_norm == ProbeNorm::pauli && probe_dimension != 2)
        throw Error("ProbeSpec: pauli normalization is defined for d = 2 probes only");
    for (const auto& term : couplings) {
        if (!std::isfinite(term.strength))
            throw Error("ProbeSpec: coupling strength must be finite");
        if (term.probe != 'a' && term.probe != 'b')
            throw Error("ProbeSpec: probe id must be 'a' or 'b'");
        if (term.chain_site < 1 || term.chain_site > chain_length)
            throw Error("ProbeSpec: coupling site outside the chain");
    }
}

ProbeSpec heisenberg_probes(int site_m, int site_n, double j_a, double j_b, ProbeNorm norm) {
    ProbeSpec spec;
    spec.site_m = site_m;
    spec.site_n = site_n;
    spec.probe_norm = norm;
    for (SpinOp op : {SpinOp::Sx, SpinOp::Sy, SpinOp::Sz}) {
        spec.couplings.push_back({site_m, op, 'a', op, j_a});
        spec.couplings.push_back({site_n, op, 'b', op, j_b});
    }
    return spec;
}

DenseMatrix probe_operator_matrix(const ProbeSpec& probes, SpinOp op) {
    if (probes.probe_dimension == 2) {
        DenseMatrix m = local_spin_matrix(LocalSpin::half, op);
        if (probes.probe_norm == ProbeNorm::pauli)
            m *= 2.0; // tau = 2 S
        return m;
    }
    if (probes.probe_dimension == 3)
        return local_spin_matrix(LocalSpin::one, op);
    throw Error("probe_operator_matrix: unsupported probe dimension");
}

DenseMatrix bond_matrix(const ChainSpec& spec) {
    const LocalSpin s = spec.local_spin();
    const int d = local_dim(s);
    const DenseMatrix sz = local_spin_matrix(s, SpinOp::Sz);
    const DenseMatrix sp = local_spin_matrix(s, SpinOp::Sp);
    const DenseMatrix sm = local_spin_matrix(s, SpinOp::Sm);

    auto kron2 = [d](const DenseMatrix& x, const DenseMatrix& y) {
        DenseMatrix out(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out.block(i * d, j * d, d, d) = x(i, j) * y;
        return out;
    };

    DenseMatrix heis = kron2(sz, sz) + 0.5 * (kron2(sp, sm) + kron2(sm, sp));
    if (spec.model == ChainModel::heisenberg_spin_half)
        return heis;
    return heis + spec.biquadratic_beta * (heis * heis).eval();
}

SparseOperator build_chain_hamiltonian(const ChainSpec& spec, const SpinBasis& basis) {
    spec.validate();
    if (basis.site_count() != spec.length || basis.local_spin() != spec.local_spin())
        throw BasisMismatch("build_chain_hamiltonian: basis does not match the chain spec");

    const DenseMatrix bond = bond_matrix(spec);
    const std::int64_t n = basis.dimension();
    SparseMatrix h(n, n);
    const int bonds = spec.boundary == Boundary::periodic ? spec.length : spec.length - 1;
    for (int b = 0; b < bonds; ++b) {
        const int i = b + 1;
        const int j = (b + 1) % spec.length + 1;
        h += two_site_operator(basis, i, j, bond).entries();
    }
    return SparseOperator(basis, std::move(h));
}

SparseOperator build_chain_hamiltonian(const ChainSpec& spec, std::optional<double> sector_sz) {
    return build_chain_hamiltonian(spec, build_basis(spec.length, spec.local_spin(), sector_sz));
}

SparseOperator build_full_hamiltonian(const ChainSpec& chain, const ProbeSpec& probes,
                                      double scale) {
    chain.validate();
    probes.validate(chain.length);

    const SpinBasis chain_basis = build_basis(chain.length, chain.local_spin());
    const SparseOperator h0 = build_chain_hamiltonian(chain, chain_basis);
    const int d = probes.probe_dimension;
    const DenseMatrix id = DenseMatrix::Identity(d, d);

    SparseMatrix h = kron_chain_probes(h0.entries(), id, id);
    if (scale != 0.0)
        h += scale * build_probe_coupling(chain, probes).entries();

    // composite basis bookkeeping: chain sites plus two probe "sites"; we keep
    // the chain SpinBasis and track the enlarged dimension in the matrix only
    return SparseOperator(chain_basis, std::move(h));
}

SparseOperator build_probe_coupling(const ChainSpec& chain, const ProbeSpec& probes) {
    chain.validate();
    probes.validate(chain.length);

    const SpinBasis chain_basis = build_basis(chain.length, chain.local_spin());
    const int d = probes.probe_dimension;
    const DenseMatrix id = DenseMatrix::Identity(d, d);
    const std::int64_t n = chain_basis.dimension() * d * d;

    SparseMatrix v(n, n);
    for (const auto& term : probes.couplings) {
        const SparseOperator chain_op = site_operator(chain_basis, term.chain_site, term.chain_op);
        const DenseMatrix probe_op = probe_operator_matrix(probes, term.probe_op);
        const DenseMatrix& pa = term.probe == 'a' ? probe_op : id;
        const DenseMatrix& pb = term.probe == 'b' ? probe_op : id;
        v += term.strength * kron_chain_probes(chain_op.entries(), pa, pb);
    }
    return SparseOperator(chain_basis, std::move(v));
}

SparseOperator composite_total_sz(const ChainSpec& chain, const ProbeSpec& probes) {
    const SpinBasis chain_basis = build_basis(chain.length, chain.local_spin());
    const int d = probes.probe_dimension;
    const DenseMatrix id = DenseMatrix::Identity(d, d);
    const DenseMatrix sz_probe = [&] {
        ProbeSpec spin_units = probes;
        spin_units.probe_norm = ProbeNorm::spin_half;
        return probe_operator_matrix(spin_units, SpinOp::Sz);
    }();

    SparseMatrix sz = kron_chain_probes(total_sz_operator(chain_basis).entries(), id, id);
    SparseMatrix ident(chain_basis.dimension(), chain_basis.dimension());
    ident.setIdentity();
    sz += kron_chain_probes(ident, sz_probe, id);
    sz += kron_chain_probes(ident, id, sz_probe);
    return SparseOperator(chain_basis, std::move(sz));
}

} // namespace lde
