#include "lde/basis.hpp"

#include <algorithm>
#include <cmath>

namespace lde {

namespace {

std::vector<std::uint64_t> make_strides(int site_count, int d) {
    // site 1 carries the most significant digit
    std::vector<std::uint64_t> stride(static_cast<std::size_t>(site_count) + 1, 1);
    for (int site = site_count; site >= 1; --site)
        stride[static_cast<std::size_t>(site) - 1] =
            stride[static_cast<std::size_t>(site)] * static_cast<std::uint64_t>(d);
    return stride;
}

} // namespace

SpinBasis SpinBasis::full(int site_count, LocalSpin spin) {
    if (site_count < 1)
        throw Error("SpinBasis: site_count must be >= 1");
    SpinBasis b;
    b.site_count_ = site_count;
    b.spin_ = spin;
    b.site_stride_ = make_strides(site_count, local_dim(spin));
    b.full_dim_ = static_cast<std::int64_t>(b.site_stride_[0]);
    return b;
}

SpinBasis SpinBasis::sector(int site_count, LocalSpin spin, double total_sz) {
    SpinBasis b = full(site_count, spin);
    b.sector_ = total_sz;
    b.states_.reserve(64);
    const std::uint64_t n = b.site_stride_[0];
    for (std::uint64_t code = 0; code < n; ++code) {
        if (std::abs(b.sz_of_code(code) - total_sz) < 1e-9)
            b.states_.push_back(code);
    }
    if (b.states_.empty())
        throw EmptySector("SpinBasis: no product states with total Sz = " +
                          std::to_string(total_sz));
    return b;
}

int SpinBasis::digit(std::uint64_t code, int site) const {
    const int d = local_dim(spin_);
    return static_cast<int>((code / site_stride_[static_cast<std::size_t>(site)]) %
                            static_cast<std::uint64_t>(d));
}

std::uint64_t SpinBasis::with_digit(std::uint64_t code, int site, int new_digit) const {
    const std::uint64_t stride = site_stride_[static_cast<std::size_t>(site)];
    const int old = digit(code, site);
    return code + (static_cast<std::uint64_t>(new_digit) - static_cast<std::uint64_t>(old)) * stride;
}

double SpinBasis::sz_of_code(std::uint64_t code) const {
    const double s = spin_value(spin_);
    double total = 0.0;
    for (int site = 1; site <= site_count_; ++site)
        total += s - digit(code, site);
    return total;
}

std::uint64_t SpinBasis::code_of_index(std::int64_t index) const {
    if (!sector_)
        return static_cast<std::uint64_t>(index);
    return states_[static_cast<std::size_t>(index)];
}

std::int64_t SpinBasis::index_of_code(std::uint64_t code) const {
    if (!sector_)
        return static_cast<std::int64_t>(code);
    auto it = std::lower_bound(states_.begin(), states_.end(), code);
    if (it == states_.end() || *it != code)
        return -1;
    return static_cast<std::int64_t>(it - states_.begin());
}

SpinBasis build_basis(int site_count, LocalSpin spin, std::optional<double> sector_sz) {
    if (sector_sz)
        return SpinBasis::sector(site_count, spin, *sector_sz);
    return SpinBasis::full(site_count, spin);
}

} // namespace lde
