#ifndef PTCS_EIGENSYSTEM_HPP
#define PTCS_EIGENSYSTEM_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "ptcs/error.hpp"
#include "ptcs/quadrature.hpp"
#include "ptcs/specfun.hpp"

namespace ptcs {

// Units: hbar = 1 throughout. Eigenfunctions do not depend on the mass; the
// mass only scales the spectrum.

/// Symmetric trigonometric Poschl-Teller well
///   V(y) = (alpha^2 / 2m) rho (rho - 1) / cos^2(alpha y),  |alpha y| < pi/2.
class SptParams
{
public:
    SptParams(double alpha, double rho, double mass = 1.0) : alpha_(alpha), rho_(rho), mass_(mass)
    {
        if (!(alpha > 0))
            throw DomainError("alpha > 0 required, got " + std::to_string(alpha));
        if (!(rho > 1))
            throw DomainError("rho > 1 required, got " + std::to_string(rho));
        if (!(mass > 0))
            throw DomainError("mass > 0 required, got " + std::to_string(mass));
    }

    double alpha() const { return alpha_; }
    double rho() const { return rho_; }
    double mass() const { return mass_; }

private:
    double alpha_;
    double rho_;
    double mass_;
};

/// General trigonometric Poschl-Teller well on 0 < alpha y < pi/2:
///   V(y) = (alpha^2 / 2m) [rho (rho - 1) / cos^2(alpha y) + k (k - 1) / sin^2(alpha y)].
class PtParams
{
public:
    PtParams(double alpha, double rho, double k, double mass = 1.0)
        : alpha_(alpha), rho_(rho), k_(k), mass_(mass)
    {
        if (!(alpha > 0))
            throw DomainError("alpha > 0 required, got " + std::to_string(alpha));
        if (!(rho > 1))
            throw DomainError("rho > 1 required, got " + std::to_string(rho));
        if (!(k > 1))
            throw DomainError("k > 1 required, got " + std::to_string(k));
        if (!(mass > 0))
            throw DomainError("mass > 0 required, got " + std::to_string(mass));
    }

    double alpha() const { return alpha_; }
    double rho() const { return rho_; }
    double k() const { return k_; }
    double mass() const { return mass_; }

private:
    double alpha_;
    double rho_;
    double k_;
    double mass_;
};

using Potential = std::variant<SptParams, PtParams>;

inline double alpha_of(const Potential& p)
{
    return std::visit([](const auto& q) { return q.alpha(); }, p);
}

inline double mass_of(const Potential& p)
{
    return std::visit([](const auto& q) { return q.mass(); }, p);
}

inline bool is_symmetric(const Potential& p) { return std::holds_alternative<SptParams>(p); }

/// Physical extent (y_min, y_max) of the well.
struct WellInterval
{
    double lo;
    double hi;
};

inline WellInterval well_interval(const Potential& p)
{
    const double half = std::numbers::pi / (2.0 * alpha_of(p));
    return is_symmetric(p) ? WellInterval{-half, half} : WellInterval{0.0, half};
}

/// Sample points inside the well. `points` holds the natural variable of the
/// eigenfunctions (xbar = sin(alpha y) for the symmetric well, u = sin^2(alpha y)
/// for the general one); `positions` holds the physical coordinate y; `weights`
/// integrate in y.
struct SpatialGrid
{
    std::vector<double> points;
    std::vector<double> positions;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

inline double natural_variable(const Potential& p, double y)
{
    const double s = std::sin(alpha_of(p) * y);
    return is_symmetric(p) ? s : s * s;
}

/// Grid from physical positions (strictly increasing, strictly inside the well)
/// and matching positive weights.
inline SpatialGrid grid_from_positions(const Potential& p, std::vector<double> positions,
                                       std::vector<double> weights)
{
    if (positions.size() != weights.size() || positions.empty())
        throw DomainError("grid: positions and weights must be nonempty and of equal length");
    const auto [lo, hi] = well_interval(p);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!(positions[i] > lo && positions[i] < hi))
            throw DomainError("grid: points must lie strictly inside the well");
        if (i > 0 && !(positions[i] > positions[i - 1]))
            throw DomainError("grid: points must be strictly increasing");
        if (!(weights[i] > 0))
            throw DomainError("grid: weights must be positive");
    }
    SpatialGrid g;
    g.points.reserve(positions.size());
    for (double y : positions)
        g.points.push_back(natural_variable(p, y));
    g.positions = std::move(positions);
    g.weights = std::move(weights);
    return g;
}

/// Gauss-Legendre rule mapped onto the well in the physical coordinate.
inline SpatialGrid quadrature_grid(const Potential& p, std::size_t nodes = 800)
{
    const auto [lo, hi] = well_interval(p);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    auto rule = gauss_legendre(nodes);
    std::vector<double> ys(nodes);
    std::vector<double> ws(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        ys[i] = mid + half * rule.nodes[i];
        ws[i] = half * rule.weights[i];
    }
    return grid_from_positions(p, std::move(ys), std::move(ws));
}

/// n equally spaced cell midpoints across the well, midpoint-rule weights.
inline SpatialGrid uniform_grid(const Potential& p, std::size_t n = 512)
{
    if (n < 2)
        throw DomainError("uniform_grid: resolution >= 2 required");
    const auto [lo, hi] = well_interval(p);
    const double h = (hi - lo) / static_cast<double>(n);
    std::vector<double> ys(n);
    if (is_symmetric(p)) {
        // Mirror the positive half so that the grid is exactly symmetric about 0.
        for (std::size_t i = 0; i < n; ++i) {
            const double offset = (static_cast<double>(i) + 0.5 - 0.5 * static_cast<double>(n)) * h;
            ys[i] = offset;
        }
        for (std::size_t i = 0; i < n / 2; ++i)
            ys[i] = -ys[n - 1 - i];
    } else {
        for (std::size_t i = 0; i < n; ++i)
            ys[i] = lo + (static_cast<double>(i) + 0.5) * h;
    }
    return grid_from_positions(p, std::move(ys), std::vector<double>(n, h));
}

// ---------------------------------------------------------------------------
// Spectrum

inline double spt_energy(const SptParams& p, unsigned n)
{
    const double a = p.alpha();
    const double q = n + p.rho();
    return a * a / (2.0 * p.mass()) * q * q;
}

/// E_n = (alpha^2 / 2m) (2n + rho + k)^2, so that at m = 1 the level spacing is
/// E_{n+1} - E_n = 2 alpha^2 (2n + rho + k + 1).
inline double pt_energy(const PtParams& p, unsigned n)
{
    const double a = p.alpha();
    const double q = 2.0 * n + p.rho() + p.k();
    return a * a / (2.0 * p.mass()) * q * q;
}

inline double energy(const Potential& p, unsigned n)
{
    return std::visit(
        [n](const auto& q) {
            if constexpr (std::is_same_v<std::decay_t<decltype(q)>, SptParams>)
                return spt_energy(q, n);
            else
                return pt_energy(q, n);
        },
        p);
}

/// E_n = c0 + c1 n + c2 n^2 (both wells have exactly quadratic spectra).
struct QuadraticSpectrum
{
    double c0;
    double c1;
    double c2;

    double operator()(double n) const { return c0 + c1 * n + c2 * n * n; }
};

inline QuadraticSpectrum spectrum(const Potential& p)
{
    const double s = alpha_of(p) * alpha_of(p) / (2.0 * mass_of(p));
    if (const auto* spt = std::get_if<SptParams>(&p)) {
        const double r = spt->rho();
        return {s * r * r, 2.0 * s * r, s};
    }
    const auto& pt = std::get<PtParams>(p);
    const double q = pt.rho() + pt.k();
    return {s * q * q, 4.0 * s * q, 4.0 * s};
}

inline double potential_value(const Potential& p, double y)
{
    const auto [lo, hi] = well_interval(p);
    if (!(y > lo && y < hi))
        throw DomainError("potential_value: y must lie strictly inside the well");
    const double a = alpha_of(p);
    const double scale = a * a / (2.0 * mass_of(p));
    const double c = std::cos(a * y);
    if (const auto* spt = std::get_if<SptParams>(&p))
        return scale * spt->rho() * (spt->rho() - 1.0) / (c * c);
    const auto& pt = std::get<PtParams>(p);
    const double s = std::sin(a * y);
    return scale * (pt.rho() * (pt.rho() - 1.0) / (c * c) + pt.k() * (pt.k() - 1.0) / (s * s));
}

// ---------------------------------------------------------------------------
// Eigenfunctions

namespace detail {

// ln of the normalization prefactor of the symmetric-well eigenfunction.
inline double spt_log_norm(const SptParams& p, unsigned n)
{
    const double r = p.rho();
    const double n1 = static_cast<double>(n);
    return 0.5 * (std::log(p.alpha()) + log_gamma(n1 + 1.0) + std::log(n1 + r) + log_gamma(r) +
                  log_gamma(2.0 * r) - 0.5 * std::log(std::numbers::pi) - log_gamma(r + 0.5) -
                  log_gamma(n1 + 2.0 * r));
}

inline double pt_log_norm(const PtParams& p, unsigned n)
{
    const double r = p.rho();
    const double k = p.k();
    const double n1 = static_cast<double>(n);
    return 0.5 * (std::log(2.0 * p.alpha()) + std::log(k + r + 2.0 * n1) + log_gamma(n1 + 1.0) +
                  log_gamma(k + r + n1) - log_gamma(k + n1 + 0.5) - log_gamma(r + n1 + 0.5));
}

// ln of the envelope (1 - xbar^2)^{rho/2}; -inf at the walls.
inline double spt_log_envelope(double rho, double xbar)
{
    return 0.5 * rho * std::log((1.0 - xbar) * (1.0 + xbar));
}

inline double pt_log_envelope(double rho, double k, double u)
{
    return 0.5 * rho * std::log1p(-u) + 0.5 * k * std::log(u);
}

} // namespace detail

/// Normalized symmetric-well eigenfunction
///   Psi_n(xbar) = N_n (1 - xbar^2)^{rho/2} C_n^rho(xbar),  xbar = sin(alpha y).
inline std::vector<double> spt_eigenfunction(const SptParams& p, unsigned n, const SpatialGrid& grid)
{
    const double log_norm = detail::spt_log_norm(p, n);
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.points[j];
        out[j] = std::exp(log_norm + detail::spt_log_envelope(p.rho(), x)) *
                 gegenbauer(n, p.rho(), x);
    }
    return out;
}

/// Normalized general-well eigenfunction
///   Psi_n(u) = N_n (1 - u)^{rho/2} u^{k/2} P_n^{(k-1/2, rho-1/2)}(1 - 2u),  u = sin^2(alpha y).
inline std::vector<double> pt_eigenfunction(const PtParams& p, unsigned n, const SpatialGrid& grid)
{
    const double log_norm = detail::pt_log_norm(p, n);
    const double a = p.k() - 0.5;
    const double b = p.rho() - 0.5;
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double u = grid.points[j];
        out[j] = std::exp(log_norm + detail::pt_log_envelope(p.rho(), p.k(), u)) *
                 jacobi(n, a, b, 1.0 - 2.0 * u);
    }
    return out;
}

inline std::vector<double> eigenfunction(const Potential& p, unsigned n, const SpatialGrid& grid)
{
    if (const auto* spt = std::get_if<SptParams>(&p))
        return spt_eigenfunction(*spt, n, grid);
    return pt_eigenfunction(std::get<PtParams>(p), n, grid);
}

/// Eigenfunctions Psi_0 .. Psi_{count-1} sampled on a grid, built with one
/// polynomial recurrence sweep per grid point. Row-major: state n occupies
/// values[n * grid.size() .. (n + 1) * grid.size()).
class EigenBasis
{
public:
    EigenBasis(const Potential& potential, SpatialGrid grid, std::size_t count)
        : potential_(potential), grid_(std::move(grid)), count_(count),
          values_(count * grid_.size(), 0.0)
    {
        if (count == 0)
            return;
        const auto nmax = static_cast<unsigned>(count - 1);
        const std::size_t npts = grid_.size();
        std::vector<double> log_norm(count);
        if (const auto* spt = std::get_if<SptParams>(&potential_)) {
            for (unsigned n = 0; n <= nmax; ++n)
                log_norm[n] = detail::spt_log_norm(*spt, n);
            for (std::size_t j = 0; j < npts; ++j) {
                const double x = grid_.points[j];
                const double env = detail::spt_log_envelope(spt->rho(), x);
                const auto c = gegenbauer_all(nmax, spt->rho(), x);
                for (unsigned n = 0; n <= nmax; ++n)
                    values_[n * npts + j] = std::exp(log_norm[n] + env) * c[n];
            }
        } else {
            const auto& pt = std::get<PtParams>(potential_);
            for (unsigned n = 0; n <= nmax; ++n)
                log_norm[n] = detail::pt_log_norm(pt, n);
            for (std::size_t j = 0; j < npts; ++j) {
                const double u = grid_.points[j];
                const double env = detail::pt_log_envelope(pt.rho(), pt.k(), u);
                const auto pj = jacobi_all(nmax, pt.k() - 0.5, pt.rho() - 0.5, 1.0 - 2.0 * u);
                for (unsigned n = 0; n <= nmax; ++n)
                    values_[n * npts + j] = std::exp(log_norm[n] + env) * pj[n];
            }
        }
    }

    const Potential& potential() const { return potential_; }
    const SpatialGrid& grid() const { return grid_; }
    std::size_t size() const { return count_; }

    std::span<const double> state(std::size_t n) const
    {
        return {values_.data() + n * grid_.size(), grid_.size()};
    }

private:
    Potential potential_;
    SpatialGrid grid_;
    std::size_t count_;
    std::vector<double> values_;
};

} // namespace ptcs

#endif // PTCS_EIGENSYSTEM_HPP
