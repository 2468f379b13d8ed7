#include "lde/operators.hpp"

#include <cmath>

namespace lde {

SpinOp spin_op_from_label(const std::string& label) {
    if (label == "Sx") return SpinOp::Sx;
    if (label == "Sy") return SpinOp::Sy;
    if (label == "Sz") return SpinOp::Sz;
    if (label == "S+") return SpinOp::Sp;
    if (label == "S-") return SpinOp::Sm;
    throw Error("unknown spin operator label: " + label);
}

std::string spin_op_label(SpinOp op) {
    switch (op) {
    case SpinOp::Sx: return "Sx";
    case SpinOp::Sy: return "Sy";
    case SpinOp::Sz: return "Sz";
    case SpinOp::Sp: return "S+";
    case SpinOp::Sm: return "S-";
    }
    return "?";
}

DenseMatrix local_spin_matrix(LocalSpin spin, SpinOp op) {
    const int d = local_dim(spin);
    const double s = spin_value(spin);
    DenseMatrix sz = DenseMatrix::Zero(d, d);
    DenseMatrix sp = DenseMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = s - k;
        sz(k, k) = m;
        if (k >= 1) {
            // S+ |s, m> = sqrt(s(s+1) - m(m+1)) |s, m+1>, i.e. digit k -> k-1
            const double mm = s - k;
            sp(k - 1, k) = std::sqrt(s * (s + 1.0) - mm * (mm + 1.0));
        }
    }
    switch (op) {
    case SpinOp::Sz: return sz;
    case SpinOp::Sp: return sp;
    case SpinOp::Sm: return sp.adjoint();
    case SpinOp::Sx: return 0.5 * (sp + DenseMatrix(sp.adjoint()));
    case SpinOp::Sy: return Complex(0.0, -0.5) * (sp - DenseMatrix(sp.adjoint()));
    }
    return sz;
}

double SparseOperator::hermiticity_defect() const {
    SparseMatrix diff = entries_ - SparseMatrix(entries_.adjoint());
    double worst = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
    if (!same_basis(basis_, other.basis_))
        throw BasisMismatch("SparseOperator: operands live on different bases");
    entries_ += other.entries_;
    return *this;
}

SparseOperator& SparseOperator::operator*=(Complex factor) {
    entries_ *= factor;
    return *this;
}

SparseOperator operator+(SparseOperator a, const SparseOperator& b) {
    a += b;
    return a;
}

SparseOperator operator*(Complex factor, SparseOperator a) {
    a *= factor;
    return a;
}

SparseOperator site_operator(const SpinBasis& basis, int site, SpinOp op) {
    if (site < 1 || site > basis.site_count())
        throw Error("site_operator: site out of range");
    if (basis.sector_sz() && op != SpinOp::Sz)
        throw SectorViolation("site_operator: only Sz acts within a fixed-Sz sector");

    const DenseMatrix local = local_spin_matrix(basis.local_spin(), op);
    const int d = local.rows();
    const std::int64_t n = basis.dimension();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(n));
    for (std::int64_t idx = 0; idx < n; ++idx) {
        const std::uint64_t code = basis.code_of_index(idx);
        const int k = basis.digit(code, site);
        for (int kp = 0; kp < d; ++kp) {
            const Complex v = local(kp, k);
            if (v == Complex(0.0, 0.0))
                continue;
            const std::uint64_t target = basis.with_digit(code, site, kp);
            const std::int64_t tidx = basis.index_of_code(target);
            if (tidx < 0)
                continue; // cannot happen for Sz; S+/S- only reach here in full bases
            trips.emplace_back(static_cast<int>(tidx), static_cast<int>(idx), v);
        }
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(basis, std::move(m));
}

SparseOperator site_operator(const SpinBasis& basis, int site, const std::string& label) {
    return site_operator(basis, site, spin_op_from_label(label));
}

SparseOperator two_site_operator(const SpinBasis& basis, int site_i, int site_j,
                                 const DenseMatrix& pair_matrix) {
    const int d = local_dim(basis.local_spin());
    if (site_i == site_j || site_i < 1 || site_j < 1 || site_i > basis.site_count() ||
        site_j > basis.site_count())
        throw Error("two_site_operator: invalid site pair");
    if (pair_matrix.rows() != d * d || pair_matrix.cols() != d * d)
        throw Error("two_site_operator: pair matrix has wrong dimension");

    const std::int64_t n = basis.dimension();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(n) * 4);
    for (std::int64_t idx = 0; idx < n; ++idx) {
        const std::uint64_t code = basis.code_of_index(idx);
        const int ki = basis.digit(code, site_i);
        const int kj = basis.digit(code, site_j);
        const int col = ki * d + kj;
        for (int row = 0; row < d * d; ++row) {
            const Complex v = pair_matrix(row, col);
            if (v == Complex(0.0, 0.0))
                continue;
            const int kip = row / d;
            const int kjp = row % d;
            std::uint64_t target = basis.with_digit(code, site_i, kip);
            target = basis.with_digit(target, site_j, kjp);
            const std::int64_t tidx = basis.index_of_code(target);
            if (tidx < 0)
                throw SectorViolation("two_site_operator: pair matrix leaves the Sz sector");
            trips.emplace_back(static_cast<int>(tidx), static_cast<int>(idx), v);
        }
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(basis, std::move(m));
}

SparseOperator identity_operator(const SpinBasis& basis) {
    const std::int64_t n = basis.dimension();
    SparseMatrix m(n, n);
    m.setIdentity();
    return SparseOperator(basis, std::move(m));
}

SparseOperator total_sz_operator(const SpinBasis& basis) {
    const std::int64_t n = basis.dimension();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(n));
    for (std::int64_t idx = 0; idx < n; ++idx) {
        const double sz = basis.sz_of_code(basis.code_of_index(idx));
        trips.emplace_back(static_cast<int>(idx), static_cast<int>(idx), Complex(sz, 0.0));
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(basis, std::move(m));
}

SparseMatrix kron_chain_probes(const SparseMatrix& chain_op, const DenseMatrix& probe_a,
                               const DenseMatrix& probe_b) {
    const int da = static_cast<int>(probe_a.rows());
    const int db = static_cast<int>(probe_b.rows());
    const std::int64_t nc = chain_op.rows();
    const std::int64_t n = nc * da * db;
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(chain_op.nonZeros()) * static_cast<std::size_t>(da * db));
    for (int k = 0; k < chain_op.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(chain_op, k); it; ++it) {
            for (int ra = 0; ra < da; ++ra)
                for (int ca = 0; ca < da; ++ca) {
                    const Complex va = probe_a(ra, ca);
                    if (va == Complex(0.0, 0.0))
                        continue;
                    for (int rb = 0; rb < db; ++rb)
                        for (int cb = 0; cb < db; ++cb) {
                            const Complex vb = probe_b(rb, cb);
                            if (vb == Complex(0.0, 0.0))
                                continue;
                            const std::int64_t row = (it.row() * da + ra) * db + rb;
                            const std::int64_t col = (it.col() * da + ca) * db + cb;
                            trips.emplace_back(static_cast<int>(row), static_cast<int>(col),
                                               it.value() * va * vb);
                        }
                }
        }
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

} // namespace lde
