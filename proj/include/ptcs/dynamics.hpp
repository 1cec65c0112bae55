#ifndef PTCS_DYNAMICS_HPP
#define PTCS_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

#include "ptcs/coherent.hpp"
#include "ptcs/eigensystem.hpp"
#include "ptcs/error.hpp"

namespace ptcs {

using Complex = std::complex<double>;

/// Wavefunction values on a grid at one (absolute) time.
struct WaveSample
{
    SpatialGrid grid;
    std::vector<Complex> values;
    double time = 0.0;

    std::vector<double> density() const
    {
        std::vector<double> out(values.size());
        for (std::size_t j = 0; j < values.size(); ++j)
            out[j] = std::norm(values[j]);
        return out;
    }

    /// Integral of |chi|^2 in the physical coordinate.
    double norm() const
    {
        double s = 0.0;
        for (std::size_t j = 0; j < values.size(); ++j)
            s += grid.weights[j] * std::norm(values[j]);
        return s;
    }
};

/// Scalar sampled on a time grid. Times are in units of the revival time.
template <typename T>
struct TimeSeries
{
    std::vector<double> times;
    std::vector<T> values;
};

/// |chi(x, t)|^2 on a (time x space) raster; row i is time tgrid[i].
struct CarpetRaster
{
    SpatialGrid grid;
    std::vector<double> tgrid; // units of T_rev
    std::vector<double> density;

    std::size_t rows() const { return tgrid.size(); }
    std::size_t cols() const { return grid.size(); }
    double at(std::size_t i, std::size_t j) const { return density[i * cols() + j]; }

    double row_integral(std::size_t i) const
    {
        double s = 0.0;
        for (std::size_t j = 0; j < cols(); ++j)
            s += grid.weights[j] * at(i, j);
        return s;
    }
};

struct RevivalTimes
{
    double t_rev;
    double t_cl_literal;    // 2 pi / (linear spectrum coefficient)
    double t_cl_derivative; // 2 pi / E'(nbar)
};

/// Revival and classical periods of the quadratic spectrum E_n = c0 + c1 n + c2 n^2.
/// For the symmetric well: T_rev = 4 pi m / alpha^2, T_cl = 2 pi m / (alpha^2 rho)
/// (literal) and 2 pi m / (alpha^2 (nbar + rho)) (derivative).
inline RevivalTimes revival_times(const Potential& p, double nbar)
{
    const auto e = spectrum(p);
    const double two_pi = 2.0 * std::numbers::pi;
    return {two_pi / e.c2, two_pi / e.c1, two_pi / (e.c1 + 2.0 * e.c2 * nbar)};
}

inline double revival_time(const Potential& p)
{
    return revival_times(p, 0.0).t_rev;
}

/// Evaluates sum_n d_n phase_n psi_n(x) over a fixed grid. The eigenbasis is
/// tabulated once at construction.
class Propagator
{
public:
    Propagator(const CoefficientSet& cs, const SpatialGrid& grid)
        : cs_(cs), basis_(cs.potential(), grid, cs.size()), energies_(cs.size())
    {
        for (std::size_t n = 0; n < cs.size(); ++n)
            energies_[n] = energy(cs.potential(), static_cast<unsigned>(n));
    }

    const CoefficientSet& coefficients() const { return cs_; }
    const SpatialGrid& grid() const { return basis_.grid(); }
    const EigenBasis& basis() const { return basis_; }
    double energy_of(std::size_t n) const { return energies_[n]; }

    /// chi(x, t) = sum_n d_n psi_n(x) exp(-i E_n t), t absolute.
    WaveSample evolve(double t) const
    {
        std::vector<Complex> amp(cs_.size());
        for (std::size_t n = 0; n < cs_.size(); ++n)
            amp[n] = cs_[n] * std::polar(1.0, -energies_[n] * t);
        return {grid(), superpose(amp), t};
    }

    /// Linear-phase packet chi_cl(x, t) = sum_n d_n psi_n(x) exp(-2 pi i n t / T_cl).
    WaveSample classical(double t, double t_cl) const
    {
        if (!(t_cl > 0))
            throw DomainError("classical wave packet: T_cl > 0 required");
        std::vector<Complex> amp(cs_.size());
        for (std::size_t n = 0; n < cs_.size(); ++n) {
            // Reduce t / T_cl modulo 1 first so that the period holds to rounding.
            const double cycles = static_cast<double>(n) * std::fmod(t / t_cl, 1.0);
            amp[n] = cs_[n] * std::polar(1.0, -2.0 * std::numbers::pi * std::fmod(cycles, 1.0));
        }
        return {grid(), superpose(amp), t};
    }

    /// |chi|^2 at time t into `out` (length grid().size()).
    void density_into(double t, std::span<double> out) const
    {
        std::vector<Complex> amp(cs_.size());
        for (std::size_t n = 0; n < cs_.size(); ++n)
            amp[n] = cs_[n] * std::polar(1.0, -energies_[n] * t);
        const auto field = superpose(amp);
        for (std::size_t j = 0; j < field.size(); ++j)
            out[j] = std::norm(field[j]);
    }

    std::vector<Complex> superpose(std::span<const Complex> amp) const
    {
        const std::size_t npts = grid().size();
        std::vector<Complex> field(npts, Complex(0.0, 0.0));
        for (std::size_t n = 0; n < amp.size(); ++n) {
            const auto psi = basis_.state(n);
            const Complex a = amp[n];
            for (std::size_t j = 0; j < npts; ++j)
                field[j] += a * psi[j];
        }
        return field;
    }

private:
    CoefficientSet cs_;
    EigenBasis basis_;
    std::vector<double> energies_;
};

/// chi(x, t) on `grid`, t absolute.
inline WaveSample evolve(const CoefficientSet& cs, const SpatialGrid& grid, double t)
{
    return Propagator(cs, grid).evolve(t);
}

/// chi_cl(x, t) on `grid`, t absolute.
inline WaveSample classical_wavepacket(const CoefficientSet& cs, const SpatialGrid& grid, double t,
                                       double t_cl)
{
    return Propagator(cs, grid).classical(t, t_cl);
}

/// A(t) = <chi(t)|chi(0)> = sum_n |d_n|^2 exp(+i E_n t), for t in units of T_rev.
/// Orthonormality of the basis reduces the overlap to this phase sum.
inline TimeSeries<Complex> autocorrelation(const CoefficientSet& cs, std::span<const double> tgrid)
{
    const double t_rev = revival_time(cs.potential());
    TimeSeries<Complex> out;
    out.times.assign(tgrid.begin(), tgrid.end());
    out.values.reserve(tgrid.size());
    for (double tau : tgrid) {
        const double t = tau * t_rev;
        Complex a(0.0, 0.0);
        for (std::size_t n = 0; n < cs.size(); ++n)
            a += cs[n] * cs[n] * std::polar(1.0, energy(cs.potential(), static_cast<unsigned>(n)) * t);
        out.values.push_back(a);
    }
    return out;
}

inline std::vector<double> squared_modulus(std::span<const Complex> v)
{
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](Complex z) { return std::norm(z); });
    return out;
}

/// Quantum carpet. Rows are independent; `threads` workers take interleaved
/// rows, and the result is bitwise identical for every worker count.
inline CarpetRaster carpet(const CoefficientSet& cs, const SpatialGrid& grid,
                           std::span<const double> tgrid, unsigned threads = 1)
{
    if (grid.size() == 0 || tgrid.empty())
        throw DomainError("carpet: grids must be nonempty");
    const Propagator prop(cs, grid);
    const double t_rev = revival_time(cs.potential());
    CarpetRaster raster{grid, std::vector<double>(tgrid.begin(), tgrid.end()),
                        std::vector<double>(tgrid.size() * grid.size())};
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < tgrid.size(); i += stride)
            prop.density_into(tgrid[i] * t_rev,
                              std::span<double>(raster.density).subspan(i * grid.size(), grid.size()));
    };
    const std::size_t nworkers = std::clamp<std::size_t>(threads, 1, tgrid.size());
    if (nworkers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < nworkers; ++w)
            pool.emplace_back(work, w, nworkers);
    }
    return raster;
}

/// <chi(t)|chi(0)> by quadrature on the grid (oracle for the phase sum).
inline Complex overlap(const WaveSample& a, const WaveSample& b)
{
    Complex s(0.0, 0.0);
    for (std::size_t j = 0; j < a.values.size(); ++j)
        s += a.grid.weights[j] * std::conj(a.values[j]) * b.values[j];
    return s;
}

} // namespace ptcs

#endif // PTCS_DYNAMICS_HPP
