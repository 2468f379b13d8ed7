#pragma once

// Test-only oracles, independent of the production code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lde/operators.hpp"

namespace lde::testing {

// Brute-force count of product states with a given total Sz.
inline std::int64_t brute_force_sector_dimension(int sites, int local_dim, double spin,
                                                 double total_sz) {
    std::int64_t count = 0;
    std::vector<int> digits(static_cast<std::size_t>(sites), 0);
    while (true) {
        double sz = 0.0;
        for (int d : digits)
            sz += spin - d;
        if (std::abs(sz - total_sz) < 1e-9)
            ++count;
        int pos = sites - 1;
        while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == local_dim) {
            digits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            break;
    }
    return count;
}

// Multiset comparison for spectra.
inline bool spectra_match(std::vector<double> a, std::vector<double> b, double tol) {
    if (a.size() != b.size())
        return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol)
            return false;
    return true;
}

// max |AB - BA| entry
inline double commutator_norm(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix c = a * b - b * a;
    double worst = 0.0;
    for (int k = 0; k < c.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(c, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

// (total S)^2 on the full basis.
inline SparseMatrix total_spin_squared(const SpinBasis& basis) {
    const std::int64_t n = basis.dimension();
    SparseMatrix sx(n, n), sy(n, n), sz(n, n);
    for (int site = 1; site <= basis.site_count(); ++site) {
        sx += site_operator(basis, site, SpinOp::Sx).entries();
        sy += site_operator(basis, site, SpinOp::Sy).entries();
        sz += site_operator(basis, site, SpinOp::Sz).entries();
    }
    return SparseMatrix(sx * sx) + SparseMatrix(sy * sy) + SparseMatrix(sz * sz);
}

// Permutation matrix of the cyclic site shift i -> i+1 (site L wraps to 1).
inline SparseMatrix cyclic_shift_matrix(const SpinBasis& basis) {
    const std::int64_t n = basis.dimension();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(n));
    const int sites = basis.site_count();
    for (std::int64_t idx = 0; idx < n; ++idx) {
        const std::uint64_t code = basis.code_of_index(idx);
        std::uint64_t shifted = code;
        for (int site = 1; site <= sites; ++site) {
            const int target = site % sites + 1;
            shifted = basis.with_digit(shifted, target, basis.digit(code, site));
        }
        const std::int64_t tidx = basis.index_of_code(shifted);
        trips.emplace_back(static_cast<int>(tidx), static_cast<int>(idx), Complex(1.0, 0.0));
    }
    SparseMatrix p(n, n);
    p.setFromTriplets(trips.begin(), trips.end());
    return p;
}

inline double max_abs_entry(const SparseMatrix& m) {
    double worst = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

} // namespace lde::testing
