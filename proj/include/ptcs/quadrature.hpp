#ifndef PTCS_QUADRATURE_HPP
#define PTCS_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "ptcs/error.hpp"

namespace ptcs {

struct QuadratureRule
{
    std::vector<double> nodes;   // ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Roots are found by Newton iteration
/// on the Legendre recurrence; the rule is built from the positive half and
/// mirrored, so nodes are exactly antisymmetric.
inline QuadratureRule gauss_legendre(std::size_t n)
{
    if (n == 0)
        throw DomainError("gauss_legendre: requires at least one node");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    // Returns dP_n/dx at x and stores the Newton step P_n / P_n' in `step`.
    auto legendre_derivative = [n](double x, double& step) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
            p0 = p1;
            p1 = p2;
        }
        const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        step = p1 / dp;
        return dp;
    };
    for (std::size_t i = 0; i < half; ++i) {
        // i-th largest root
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double step = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            legendre_derivative(x, step);
            x -= step;
            if (std::fabs(step) < 1e-16)
                break;
        }
        const double dp = legendre_derivative(x, step);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const std::size_t hi = n - 1 - i;
        const std::size_t lo = i;
        rule.nodes[hi] = x;
        rule.nodes[lo] = -x;
        rule.weights[hi] = w;
        rule.weights[lo] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace ptcs

#endif // PTCS_QUADRATURE_HPP
