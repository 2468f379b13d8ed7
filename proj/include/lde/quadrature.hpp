#pragma once

#include <functional>
#include <vector>

namespace lde {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the Legendre polynomial.
const GaussLegendreRule& gauss_legendre(int n);

// Fixed-order Gauss-Legendre integral of f over [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

} // namespace lde
