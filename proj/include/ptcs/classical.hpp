#ifndef PTCS_CLASSICAL_HPP
#define PTCS_CLASSICAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "ptcs/coherent.hpp"
#include "ptcs/dynamics.hpp"
#include "ptcs/error.hpp"

namespace ptcs {

/// Classical orbit in the general well. With tau = cos(2 alpha y) the motion is
/// harmonic: tau(t) = (alpha1 - beta1)/2 + sqrt(Delta) cos(omega t), which is
///   x(t) = a arccos[(alpha1 - beta1)/2 + sqrt(Delta) cos(sqrt(2 E_c / m) t / a)]
/// with a = 1 / (2 alpha).
struct ClassicalParams
{
    double a;
    double energy; // E_c
    double v0;     // alpha^2 / m
    double alpha1; // (V0 / E_c) rho (rho - 1)
    double beta1;  // (V0 / E_c) k (k - 1)
    double delta;
    double mass;

    /// Threshold energy (V0 / 2) (sqrt(rho(rho-1)) + sqrt(k(k-1)))^2 below
    /// which no orbit exists.
    static double threshold_energy(const PtParams& p)
    {
        const double v0 = p.alpha() * p.alpha() / p.mass();
        const double s = std::sqrt(p.rho() * (p.rho() - 1.0)) + std::sqrt(p.k() * (p.k() - 1.0));
        return 0.5 * v0 * s * s;
    }

    /// `a` defaults to 1 / (2 alpha), the scale the equation of motion fixes.
    static ClassicalParams make(const PtParams& p, double energy, double a = 0.0)
    {
        if (a == 0.0)
            a = 1.0 / (2.0 * p.alpha());
        if (!(a > 0))
            throw DomainError("classical: a > 0 required");
        const double threshold = threshold_energy(p);
        if (!(energy > threshold))
            throw DomainError("classical: energy condition E_c > " + std::to_string(threshold) +
                              " violated (E_c = " + std::to_string(energy) + ")");
        ClassicalParams cp{};
        cp.a = a;
        cp.energy = energy;
        cp.mass = p.mass();
        cp.v0 = p.alpha() * p.alpha() / p.mass();
        cp.alpha1 = cp.v0 / energy * p.rho() * (p.rho() - 1.0);
        cp.beta1 = cp.v0 / energy * p.k() * (p.k() - 1.0);
        const double sp = std::sqrt(cp.alpha1) + std::sqrt(cp.beta1);
        const double sm = std::sqrt(cp.alpha1) - std::sqrt(cp.beta1);
        cp.delta = (1.0 - 0.5 * sp * sp) * (1.0 - 0.5 * sm * sm);
        if (!(cp.delta >= 0))
            throw NumericalError("classical: Delta < 0 above the energy threshold");
        return cp;
    }

    double angular_frequency() const { return std::sqrt(2.0 * energy / mass) / a; }

    /// 2 pi a sqrt(m / (2 E_c)).
    double period() const { return 2.0 * std::numbers::pi / angular_frequency(); }
};

/// Position at absolute time t. `params` must be the well cp was built from.
inline double classical_trajectory(const ClassicalParams& cp, const PtParams& params, double t)
{
    if (cp.mass != params.mass())
        throw DomainError("classical_trajectory: mass mismatch between orbit and well");
    double arg = 0.5 * (cp.alpha1 - cp.beta1) + std::sqrt(cp.delta) * std::cos(cp.angular_frequency() * t);
    if (std::fabs(arg) > 1.0) {
        if (std::fabs(arg) > 1.0 + 1e-12)
            throw NumericalError("classical_trajectory: arccos argument " + std::to_string(arg) +
                                 " outside [-1, 1]");
        arg = std::copysign(1.0, arg);
    }
    return cp.a * std::acos(arg);
}

/// Location of the minimum of the general well.
inline double potential_minimum(const PtParams& p)
{
    return std::atan(std::pow(p.k() * (p.k() - 1.0) / (p.rho() * (p.rho() - 1.0)), 0.25)) / p.alpha();
}

namespace detail {

inline double log_sum_exp(const std::vector<double>& xs)
{
    double m = -INFINITY;
    for (double x : xs)
        m = std::max(m, x);
    double s = 0.0;
    for (double x : xs)
        s += std::exp(x - m);
    return m + std::log(s);
}

} // namespace detail

/// Position expectation of a general-well displacement coherent state in
/// closed form:
///   <x(t)> = (1/alpha) arcsin sqrt((1 - z)/2),
///   z = N sum_n (2 A_n cos[(E_{n+1} - E_n) t] - C_n),
/// with A_n, C_n the series coefficients of <cos(2 alpha y)> and
/// N = 1 / sum_n |d_n|^2 over the unnormalized coefficients of the same
/// truncation. At m = 1 the cosine argument is 2 alpha^2 (2n + rho + k + 1) t.
class ClosedFormPosition
{
public:
    explicit ClosedFormPosition(const CoefficientSet& cs)
    {
        if (cs.family() != Family::PtDocs)
            throw DomainError("expectation_x_closed: requires a general-well displacement coherent state");
        const auto& p = std::get<PtParams>(cs.potential());
        alpha_ = p.alpha();
        const double beta = cs.coherence_param();
        const double r = p.rho();
        const double k = p.k();
        const std::size_t count = cs.size();

        std::vector<double> log_norm2;
        for (std::size_t n = 0; n < count; ++n) {
            const auto d = pt_docs_term(beta, p, static_cast<unsigned>(n));
            if (!d.is_zero())
                log_norm2.push_back(2.0 * d.log_magnitude);
        }
        const double log_total = detail::log_sum_exp(log_norm2);

        for (std::size_t i = 0; i < count; ++i) {
            const double n = static_cast<double>(i);
            const double s = 2.0 * n + r + k;
            // C_n = beta^{2n} Gamma(rho+n+1/2) Gamma(k+n+1/2) (k+rho-1)(k-rho)
            //       / (Gamma(rho+k+n) n! (2n+rho+k)(2n+rho+k-1)(2n+rho+k+1))
            const LogWeight c = detail::signed_power(beta, 2 * static_cast<unsigned>(i)) *
                                gamma_weight(r + n + 0.5) * gamma_weight(k + n + 0.5) *
                                LogWeight::from_value((k + r - 1.0) * (k - r)) / gamma_weight(r + k + n) /
                                gamma_weight(n + 1.0) / LogWeight::from_value(s * (s - 1.0) * (s + 1.0));
            c_.push_back(scaled(c, log_total));
            if (i + 1 < count) {
                // A_n = -beta^{2n+1} 2 Gamma(rho+n+3/2) Gamma(k+n+3/2)
                //       / (Gamma(rho+k+n) n! (2n+rho+k)(2n+rho+k+1)(2n+rho+k+2))
                const LogWeight a = LogWeight::from_value(-2.0) *
                                    detail::signed_power(beta, 2 * static_cast<unsigned>(i) + 1) *
                                    gamma_weight(r + n + 1.5) * gamma_weight(k + n + 1.5) /
                                    gamma_weight(r + k + n) / gamma_weight(n + 1.0) /
                                    LogWeight::from_value(s * (s + 1.0) * (s + 2.0));
                a_.push_back(scaled(a, log_total));
                omega_.push_back(pt_energy(p, static_cast<unsigned>(i) + 1) - pt_energy(p, static_cast<unsigned>(i)));
            }
        }
    }

    /// z(t) = <cos(2 alpha y)>.
    double z(double t) const
    {
        double sum = 0.0;
        for (std::size_t n = 0; n < a_.size(); ++n)
            sum += 2.0 * a_[n] * std::cos(omega_[n] * t);
        for (double c : c_)
            sum -= c;
        return sum;
    }

    /// t absolute.
    double operator()(double t) const
    {
        const double zz = z(t);
        double arg = 0.5 * (1.0 - zz);
        if (arg < 0.0 || arg > 1.0) {
            if (arg < -1e-12 || arg > 1.0 + 1e-12)
                throw NumericalError("expectation_x_closed: arcsin argument outside [0, 1]");
            arg = std::clamp(arg, 0.0, 1.0);
        }
        return std::asin(std::sqrt(arg)) / alpha_;
    }

    const std::vector<double>& a_coefficients() const { return a_; }
    const std::vector<double>& c_coefficients() const { return c_; }

private:
    static double scaled(const LogWeight& w, double log_total)
    {
        return w.is_zero() ? 0.0 : w.sign * std::exp(w.log_magnitude - log_total);
    }

    double alpha_ = 1.0;
    std::vector<double> a_;
    std::vector<double> c_;
    std::vector<double> omega_;
};

inline double expectation_x_closed(const CoefficientSet& cs, double t)
{
    return ClosedFormPosition(cs)(t);
}

/// Integral of y |chi(y, t)|^2 dy on the grid, t absolute.
inline double expectation_x_quadrature(const Propagator& prop, double t)
{
    const auto w = prop.evolve(t);
    double s = 0.0;
    for (std::size_t j = 0; j < w.values.size(); ++j)
        s += w.grid.weights[j] * w.grid.positions[j] * std::norm(w.values[j]);
    return s;
}

inline double expectation_x_quadrature(const CoefficientSet& cs, const SpatialGrid& grid, double t)
{
    return expectation_x_quadrature(Propagator(cs, grid), t);
}

/// (1/alpha) arcsin sqrt(<sin^2(alpha y)>) by quadrature: the observable the
/// closed form evaluates, computed on the grid from the evolved field.
inline double effective_position_quadrature(const Propagator& prop, double t)
{
    const auto w = prop.evolve(t);
    const double alpha = alpha_of(prop.coefficients().potential());
    double s = 0.0;
    for (std::size_t j = 0; j < w.values.size(); ++j) {
        const double sn = std::sin(alpha * w.grid.positions[j]);
        s += w.grid.weights[j] * sn * sn * std::norm(w.values[j]);
    }
    return std::asin(std::sqrt(std::clamp(s, 0.0, 1.0))) / alpha;
}

/// Period of the strongest nonzero Fourier component of a uniformly sampled
/// real series. The Hann-windowed periodogram is scanned on the DFT bins and
/// its peak is then located in continuous frequency. The record must span at
/// least two periods.
inline double dominant_period(const std::vector<double>& times, const std::vector<double>& values)
{
    const std::size_t n = values.size();
    if (n < 4 || times.size() != n)
        throw DomainError("dominant_period: need at least 4 uniformly spaced samples");
    const double dt = times[1] - times[0];
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double hann = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
        x[j] = hann * (values[j] - mean);
    }
    // Magnitude at f cycles per record.
    const auto power = [&](double f) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            acc += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * f * static_cast<double>(j) / static_cast<double>(n));
        return std::abs(acc);
    };
    double best = 2.0;
    double best_power = -1.0;
    for (std::size_t f = 2; f <= n / 2; ++f) {
        const double pw = power(static_cast<double>(f));
        if (pw > best_power) {
            best_power = pw;
            best = static_cast<double>(f);
        }
    }
    const auto [f, neg] = boost::math::tools::brent_find_minima([&](double g) { return -power(g); },
                                                                best - 1.0, best + 1.0, 40);
    (void)neg;
    return dt * static_cast<double>(n) / f;
}

} // namespace ptcs

#endif // PTCS_CLASSICAL_HPP
