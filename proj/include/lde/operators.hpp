#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lde/basis.hpp"

namespace lde {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

enum class SpinOp { Sx, Sy, Sz, Sp, Sm };

SpinOp spin_op_from_label(const std::string& label);
std::string spin_op_label(SpinOp op);

// Local spin matrices (d x d) in the digit convention of SpinBasis:
// digit k corresponds to local Sz = s - k.
DenseMatrix local_spin_matrix(LocalSpin spin, SpinOp op);

// Sparse Hermitian-structured operator tied to a SpinBasis.
class SparseOperator {
  public:
    SparseOperator(SpinBasis basis, SparseMatrix entries)
        : basis_(std::move(basis)), entries_(std::move(entries)) {}

    const SpinBasis& basis() const { return basis_; }
    std::int64_t dimension() const { return entries_.rows(); }
    const SparseMatrix& entries() const { return entries_; }

    Vector apply(const Vector& x) const { return entries_ * x; }
    DenseMatrix dense() const { return DenseMatrix(entries_); }

    // max entrywise |M - M^dagger|
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

    SparseOperator& operator+=(const SparseOperator& other);
    SparseOperator& operator*=(Complex factor);

  private:
    SpinBasis basis_;
    SparseMatrix entries_;
};

SparseOperator operator+(SparseOperator a, const SparseOperator& b);
SparseOperator operator*(Complex factor, SparseOperator a);

// Standard spin operator on one site. In a sector-restricted basis only
// sector-preserving labels (Sz) are allowed.
SparseOperator site_operator(const SpinBasis& basis, int site, SpinOp op);
SparseOperator site_operator(const SpinBasis& basis, int site, const std::string& label);

// Operator given by a (d*d x d*d) matrix acting on the digits of two sites,
// row/column index = digit_i * d + digit_j. The matrix must preserve the
// basis sector when the basis is sector-restricted; entries that would leave
// the sector are required to vanish.
SparseOperator two_site_operator(const SpinBasis& basis, int site_i, int site_j,
                                 const DenseMatrix& pair_matrix);

// Identity on the basis.
SparseOperator identity_operator(const SpinBasis& basis);

// Total Sz over all sites (diagonal).
SparseOperator total_sz_operator(const SpinBasis& basis);

// chain_op (x) probe_a (x) probe_b on the composite space; index layout is
// chain-major: g = (chain_index * da + ka) * db + kb. Pass identity matrices
// for spectator factors.
SparseMatrix kron_chain_probes(const SparseMatrix& chain_op, const DenseMatrix& probe_a,
                               const DenseMatrix& probe_b);

} // namespace lde
