#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lde/errors.hpp"

namespace lde {

enum class LocalSpin { half, one };

inline int local_dim(LocalSpin s) { return s == LocalSpin::half ? 2 : 3; }
inline double spin_value(LocalSpin s) { return s == LocalSpin::half ? 0.5 : 1.0; }

// Product basis of L spins, optionally restricted to a total-Sz sector.
//
// A basis state is labelled by a code: site 1 is the most significant base-d
// digit, and digit k on a site means local Sz = s - k (k = 0 is the maximal
// Sz). States are enumerated in increasing code order, which is lexicographic
// in the per-site labels. This ordering is what makes sparse matrices
// bit-reproducible across runs.
class SpinBasis {
  public:
    static SpinBasis full(int site_count, LocalSpin spin);
    static SpinBasis sector(int site_count, LocalSpin spin, double total_sz);

    int site_count() const { return site_count_; }
    LocalSpin local_spin() const { return spin_; }
    std::optional<double> sector_sz() const { return sector_; }
    std::int64_t dimension() const {
        return sector_ ? static_cast<std::int64_t>(states_.size()) : full_dim_;
    }

    // Digit of `code` at `site` (1-based).
    int digit(std::uint64_t code, int site) const;
    std::uint64_t with_digit(std::uint64_t code, int site, int digit) const;
    double sz_of_code(std::uint64_t code) const;

    std::uint64_t code_of_index(std::int64_t index) const;
    // Index of `code` within the basis, or -1 when the code lies outside the
    // sector. Full basis: identity. Sector basis: binary search.
    std::int64_t index_of_code(std::uint64_t code) const;

  private:
    SpinBasis() = default;

    int site_count_ = 0;
    LocalSpin spin_ = LocalSpin::half;
    std::optional<double> sector_;
    std::int64_t full_dim_ = 0;
    std::vector<std::uint64_t> states_; // sector basis only, ascending
    std::vector<std::uint64_t> site_stride_;
};

inline bool same_basis(const SpinBasis& a, const SpinBasis& b) {
    return a.site_count() == b.site_count() && a.local_spin() == b.local_spin() &&
           a.sector_sz() == b.sector_sz();
}

// build_basis(L, spin) / build_basis(L, spin, sz)
SpinBasis build_basis(int site_count, LocalSpin spin,
                      std::optional<double> sector_sz = std::nullopt);

} // namespace lde
