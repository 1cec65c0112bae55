#ifndef PTCS_SPECFUN_HPP
#define PTCS_SPECFUN_HPP

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "ptcs/error.hpp"

namespace ptcs {

/// Signed value stored as (sign, ln|value|). Products and quotients of Gamma
/// functions are accumulated here and exponentiated once at the end, since
/// Gamma(2 rho + n) leaves double range near n + 2 rho ~ 170.
struct LogWeight
{
    double log_magnitude = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static LogWeight one() { return {0.0, 1}; }
    static LogWeight zero() { return {}; }

    static LogWeight from_value(double v)
    {
        if (v == 0.0)
            return zero();
        return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
    }

    /// From a positive quantity already in log form.
    static LogWeight from_log(double log_magnitude) { return {log_magnitude, 1}; }

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

    bool is_zero() const { return sign == 0; }

    LogWeight& operator*=(const LogWeight& o)
    {
        sign *= o.sign;
        log_magnitude = sign == 0 ? zero().log_magnitude : log_magnitude + o.log_magnitude;
        return *this;
    }

    LogWeight& operator/=(const LogWeight& o)
    {
        if (o.sign == 0)
            throw DomainError("LogWeight: division by zero");
        sign *= o.sign;
        log_magnitude = sign == 0 ? zero().log_magnitude : log_magnitude - o.log_magnitude;
        return *this;
    }

    friend LogWeight operator*(LogWeight a, const LogWeight& b) { return a *= b; }
    friend LogWeight operator/(LogWeight a, const LogWeight& b) { return a /= b; }

    /// Real power of a nonnegative weight.
    LogWeight pow(double p) const
    {
        if (sign < 0)
            throw DomainError("LogWeight::pow: negative base");
        if (sign == 0)
            return p > 0 ? zero() : one();
        return {p * log_magnitude, 1};
    }

    LogWeight sqrt() const { return pow(0.5); }
};

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("log_gamma: requires x > 0, got " + std::to_string(x));
    // lgamma_r leaves the global signgam untouched; the sign is +1 for x > 0.
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

/// Gamma(x) for x > 0 as a LogWeight.
inline LogWeight gamma_weight(double x)
{
    return LogWeight::from_log(log_gamma(x));
}

/// Gegenbauer (ultraspherical) polynomial C_n^rho(x) by the forward recurrence
///   n C_n = 2 (n + rho - 1) x C_{n-1} - (n + 2 rho - 2) C_{n-2}.
template <typename Real>
Real gegenbauer(unsigned n, Real rho, Real x)
{
    static_assert(std::is_floating_point_v<Real>, "gegenbauer requires a floating point type");
    if (!(rho > 0))
        throw DomainError("gegenbauer: requires rho > 0");
    if (n == 0)
        return Real(1);
    Real c0 = 1;
    Real c1 = 2 * rho * x;
    for (unsigned k = 2; k <= n; ++k) {
        const Real kk = static_cast<Real>(k);
        const Real c2 = (2 * (kk + rho - 1) * x * c1 - (kk + 2 * rho - 2) * c0) / kk;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

/// C_0^rho(x) .. C_nmax^rho(x) from one recurrence pass. Element i is bitwise
/// equal to gegenbauer(i, rho, x).
template <typename Real>
std::vector<Real> gegenbauer_all(unsigned nmax, Real rho, Real x)
{
    static_assert(std::is_floating_point_v<Real>, "gegenbauer_all requires a floating point type");
    if (!(rho > 0))
        throw DomainError("gegenbauer_all: requires rho > 0");
    std::vector<Real> out(nmax + 1);
    out[0] = Real(1);
    if (nmax == 0)
        return out;
    out[1] = 2 * rho * x;
    for (unsigned k = 2; k <= nmax; ++k) {
        const Real kk = static_cast<Real>(k);
        out[k] = (2 * (kk + rho - 1) * x * out[k - 1] - (kk + 2 * rho - 2) * out[k - 2]) / kk;
    }
    return out;
}

namespace detail {

// One step of the Jacobi recurrence: returns P_k from P_{k-1}, P_{k-2}, k >= 2.
template <typename Real>
Real jacobi_step(unsigned k, Real a, Real b, Real x, Real pkm1, Real pkm2)
{
    const Real kk = static_cast<Real>(k);
    const Real s = 2 * kk + a + b;
    const Real c1 = 2 * kk * (kk + a + b) * (s - 2);
    const Real c2 = (s - 1) * (s * (s - 2) * x + a * a - b * b);
    const Real c3 = 2 * (kk + a - 1) * (kk + b - 1) * s;
    return (c2 * pkm1 - c3 * pkm2) / c1;
}

template <typename Real>
void check_jacobi_params(Real a, Real b)
{
    if (!(a > -1) || !(b > -1))
        throw DomainError("jacobi: requires a > -1 and b > -1");
}

} // namespace detail

/// Jacobi polynomial P_n^{(a,b)}(x), standard normalization
/// P_n(1) = Gamma(n + a + 1) / (n! Gamma(a + 1)).
template <typename Real>
Real jacobi(unsigned n, Real a, Real b, Real x)
{
    static_assert(std::is_floating_point_v<Real>, "jacobi requires a floating point type");
    detail::check_jacobi_params(a, b);
    if (n == 0)
        return Real(1);
    Real p0 = 1;
    Real p1 = (a + 1) + (a + b + 2) * (x - 1) / 2;
    for (unsigned k = 2; k <= n; ++k) {
        const Real p2 = detail::jacobi_step(k, a, b, x, p1, p0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// P_0^{(a,b)}(x) .. P_nmax^{(a,b)}(x); element i is bitwise equal to jacobi(i, a, b, x).
template <typename Real>
std::vector<Real> jacobi_all(unsigned nmax, Real a, Real b, Real x)
{
    static_assert(std::is_floating_point_v<Real>, "jacobi_all requires a floating point type");
    detail::check_jacobi_params(a, b);
    std::vector<Real> out(nmax + 1);
    out[0] = Real(1);
    if (nmax == 0)
        return out;
    out[1] = (a + 1) + (a + b + 2) * (x - 1) / 2;
    for (unsigned k = 2; k <= nmax; ++k)
        out[k] = detail::jacobi_step(k, a, b, x, out[k - 1], out[k - 2]);
    return out;
}

} // namespace ptcs

#endif // PTCS_SPECFUN_HPP
