#pragma once

#include "lde/errors.hpp"

namespace lde {

// Parameters of the finite-chain conformal result for the Heisenberg chain.
// The amplitude of the staggered correlator is nonuniversal and stays a user
// parameter; the default Fermi velocity is the spinon velocity pi/2 (J = 1).
struct CftParams {
    double amplitude = 1.0;     // A > 0
    double fermi_velocity = 0.0; // v_F > 0; 0 selects the default pi/2
    int length = 0;             // L
    int separation = 0;         // r = |m - n| in lattice spacings, 1 <= r <= L/2

    double velocity() const;
    void validate() const;
};

// chi~(0) = (-1)^r A / (2 v_F) * Integral_{2 pi r / L}^{pi} dy
//           (y/pi - 1) / sqrt(cos(2 pi r / L) - cos y).
// The inverse-square-root endpoint is removed by y = th0 + (pi - th0) s^2 and
// the smooth integrand is handled by fixed-order Gauss-Legendre.
double cft_chi0(const CftParams& params);

// AKLT single-mode-approximation inputs: dispersion
// w_q = 5 (5 + 3 cos q) / 27 and static structure factor
// s(q) = (10/27) (1 - cos q) / w_q; both even in q.
double sma_dispersion(double q);
double sma_structure_factor(double q);

// AKLT correlation length 1 / ln 3.
double aklt_correlation_length();

// Closed form of the AKLT response per unit probe coupling squared:
// chi~(r) = -(27/10) (-1)^r (1 + 4r/3) 3^{-r}.
double aklt_chi0_closed(int separation);

// The same value from the SMA momentum integral
// chi~(r) = -(2/pi) Integral_0^pi dq cos(q r) s(q) / w_q
// by fixed-order quadrature (1e-10 absolute).
double aklt_chi0_integral(int separation);

// Direct evaluation of the printed integrand variant
// (1/2pi) Integral_{-pi}^{pi} dq cos(q r) (a + b/w_q) / w_q with a = -2/3,
// b = 80/81. It evaluates to -1/2 times the value above and is kept only so
// the discrepancy is inspectable; aklt_chi0_integral is the supported route.
double aklt_chi0_integral_printed_form(int separation);

} // namespace lde
