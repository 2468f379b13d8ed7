#include "lde/analytic.hpp"

#include <cmath>
#include <numbers>

#include "lde/quadrature.hpp"

namespace lde {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int cft_order = 160;
constexpr int sma_order = 128;

} // namespace

double CftParams::velocity() const { return fermi_velocity > 0.0 ? fermi_velocity : pi / 2.0; }

void CftParams::validate() const {
    if (length < 2)
        throw Error("CftParams: length must be >= 2");
    if (separation < 1)
        throw InvalidSeparation("CftParams: separation must be >= 1");
    if (2 * separation > length)
        throw InvalidSeparation("CftParams: separation must satisfy r <= L/2 "
                                "(larger r maps back by ring symmetry)");
    if (amplitude <= 0.0)
        throw Error("CftParams: amplitude must be positive");
    if (fermi_velocity < 0.0)
        throw Error("CftParams: fermi_velocity must be positive");
}

double cft_chi0(const CftParams& params) {
    params.validate();
    const double theta0 = 2.0 * pi * params.separation / params.length;
    const double width = pi - theta0;
    if (width <= 0.0)
        return 0.0; // r = L/2: empty integration interval

    const double cos0 = std::cos(theta0);
    auto integrand = [&](double s) {
        const double y = theta0 + width * s * s;
        const double denom = cos0 - std::cos(y);
        // regularized: near s = 0 the substitution leaves a finite limit
        if (denom <= 0.0) {
            // only reachable by rounding at s -> 0; use the analytic limit
            const double slope = std::sin(theta0) * width;
            return 2.0 * width * (theta0 / pi - 1.0) / std::sqrt(std::max(slope, 1e-300));
        }
        return 2.0 * width * s * (y / pi - 1.0) / std::sqrt(denom);
    };
    const double integral = integrate_gl(integrand, 0.0, 1.0, cft_order);
    const double sign = params.separation % 2 == 0 ? 1.0 : -1.0;
    return sign * params.amplitude / (2.0 * params.velocity()) * integral;
}

double sma_dispersion(double q) { return 5.0 * (5.0 + 3.0 * std::cos(q)) / 27.0; }

double sma_structure_factor(double q) {
    return (10.0 / 27.0) * (1.0 - std::cos(q)) / sma_dispersion(q);
}

double aklt_correlation_length() { return 1.0 / std::log(3.0); }

double aklt_chi0_closed(int separation) {
    if (separation < 1)
        throw InvalidSeparation("aklt_chi0_closed: separation must be >= 1");
    const double sign = separation % 2 == 0 ? 1.0 : -1.0;
    return -(27.0 / 10.0) * sign * (1.0 + 4.0 * separation / 3.0) *
           std::pow(3.0, -separation);
}

double aklt_chi0_integral(int separation) {
    if (separation < 1)
        throw InvalidSeparation("aklt_chi0_integral: separation must be >= 1");
    auto integrand = [separation](double q) {
        return std::cos(q * separation) * sma_structure_factor(q) / sma_dispersion(q);
    };
    return -(2.0 / pi) * integrate_gl(integrand, 0.0, pi, sma_order);
}

double aklt_chi0_integral_printed_form(int separation) {
    if (separation < 1)
        throw InvalidSeparation("aklt_chi0_integral_printed_form: separation must be >= 1");
    const double a = -2.0 / 3.0;
    const double b = 80.0 / 81.0;
    auto integrand = [&](double q) {
        const double w = sma_dispersion(q);
        return std::cos(q * separation) * (a + b / w) / w;
    };
    // even integrand: fold [-pi, pi] onto [0, pi]
    return (1.0 / pi) * integrate_gl(integrand, 0.0, pi, sma_order);
}

} // namespace lde
