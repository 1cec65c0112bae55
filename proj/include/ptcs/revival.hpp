#ifndef PTCS_REVIVAL_HPP
#define PTCS_REVIVAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <numbers>
#include <string>
#include <vector>

#include "ptcs/dynamics.hpp"
#include "ptcs/error.hpp"

namespace ptcs {

/// At t = (r/s) T_rev the state is a superposition of l copies of the linear-phase
/// packet shifted by p T_cl / l, weighted by a_p.
struct FractionalRevival
{
    long r;
    long s;
    long l;
    std::vector<Complex> a;
};

/// Period in n of exp(-2 pi i n^2 r / s): s/2 when 4 | s, otherwise s.
inline long quadratic_phase_period(long s)
{
    return s % 4 == 0 ? s / 2 : s;
}

/// a_p = (1/l) sum_{n=0}^{l-1} exp[2 pi i (n p / l - n^2 r / s)].
inline FractionalRevival fractional_decomposition(long r, long s)
{
    if (r < 0 || s < 1)
        throw DomainError("fractional_decomposition: requires r >= 0 and s >= 1");
    if (std::gcd(r, s) != 1)
        throw DomainError("fractional_decomposition: r and s must be coprime, got r=" +
                          std::to_string(r) + " s=" + std::to_string(s));
    const long l = quadratic_phase_period(s);
    FractionalRevival fr{r, s, l, std::vector<Complex>(static_cast<std::size_t>(l))};
    for (long p = 0; p < l; ++p) {
        Complex sum(0.0, 0.0);
        for (long n = 0; n < l; ++n) {
            // Reduce both phase fractions exactly in integers before scaling by 2 pi.
            const long lin = (n * p) % l;
            const long quad = ((n * n) % s) * (r % s) % s;
            const double turns = static_cast<double>(lin) / static_cast<double>(l) -
                                 static_cast<double>(quad) / static_cast<double>(s);
            sum += std::polar(1.0, 2.0 * std::numbers::pi * turns);
        }
        fr.a[static_cast<std::size_t>(p)] = sum / static_cast<double>(l);
    }
    return fr;
}

/// sum_p a_p chi_cl(x, (r/s) T_rev + (p/l) T_cl), times exp(-i E_0 t). The
/// factor exp(-i E_0 t) is the zero-point phase that the linear-phase packet
/// omits; with T_cl = 2 pi / c1 the sum equals chi(x, (r/s) T_rev) exactly.
inline WaveSample reconstruct_fractional(const Propagator& prop, const FractionalRevival& fr,
                                         double t_cl)
{
    const auto& pot = prop.coefficients().potential();
    const double t = static_cast<double>(fr.r) / static_cast<double>(fr.s) * revival_time(pot);
    const Complex zero_point = std::polar(1.0, -spectrum(pot).c0 * t);
    std::vector<Complex> sum(prop.grid().size(), Complex(0.0, 0.0));
    for (long p = 0; p < fr.l; ++p) {
        const auto sub = prop.classical(t + static_cast<double>(p) / static_cast<double>(fr.l) * t_cl, t_cl);
        const Complex w = fr.a[static_cast<std::size_t>(p)] * zero_point;
        for (std::size_t j = 0; j < sum.size(); ++j)
            sum[j] += w * sub.values[j];
    }
    return {prop.grid(), std::move(sum), t};
}

struct InterferencePair
{
    std::size_t p;
    std::size_t q;
    std::vector<double> term; // 2 Re[conj(a_p chi_p) a_q chi_q] on the grid
    double weighted_l1;       // integral of |term|
    double overlap_l1;        // integral of |Re(conj(chi_p) chi_q)|
};

/// Density at a fractional revival split into sub-packet densities
/// |a_p|^2 |chi_p|^2 and pairwise interference terms, which sum to |chi|^2.
struct InterferenceReport
{
    FractionalRevival decomposition;
    std::vector<std::vector<double>> subpacket_density; // |chi_cl^(p)|^2
    std::vector<InterferencePair> pairs;                // sorted by decreasing weighted_l1
    std::vector<double> total_density;                  // sum of all parts

    const InterferencePair& pair(std::size_t p, std::size_t q) const
    {
        for (const auto& ip : pairs)
            if ((ip.p == p && ip.q == q) || (ip.p == q && ip.q == p))
                return ip;
        throw DomainError("InterferenceReport: no such pair");
    }
};

inline InterferenceReport interference_decomposition(const Propagator& prop, long r, long s, double t_cl)
{
    InterferenceReport rep{fractional_decomposition(r, s), {}, {}, {}};
    const auto& fr = rep.decomposition;
    const auto& grid = prop.grid();
    const double t = static_cast<double>(r) / static_cast<double>(s) *
                     revival_time(prop.coefficients().potential());
    std::vector<WaveSample> subs;
    for (long p = 0; p < fr.l; ++p)
        subs.push_back(prop.classical(t + static_cast<double>(p) / static_cast<double>(fr.l) * t_cl, t_cl));

    rep.total_density.assign(grid.size(), 0.0);
    for (std::size_t p = 0; p < subs.size(); ++p) {
        rep.subpacket_density.push_back(subs[p].density());
        const double w = std::norm(fr.a[p]);
        for (std::size_t j = 0; j < grid.size(); ++j)
            rep.total_density[j] += w * rep.subpacket_density[p][j];
    }
    for (std::size_t p = 0; p < subs.size(); ++p) {
        for (std::size_t q = p + 1; q < subs.size(); ++q) {
            InterferencePair ip{p, q, std::vector<double>(grid.size()), 0.0, 0.0};
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const Complex cp = fr.a[p] * subs[p].values[j];
                const Complex cq = fr.a[q] * subs[q].values[j];
                ip.term[j] = 2.0 * std::real(std::conj(cp) * cq);
                rep.total_density[j] += ip.term[j];
                ip.weighted_l1 += grid.weights[j] * std::fabs(ip.term[j]);
                ip.overlap_l1 +=
                    grid.weights[j] * std::fabs(std::real(std::conj(subs[p].values[j]) * subs[q].values[j]));
            }
            rep.pairs.push_back(std::move(ip));
        }
    }
    std::stable_sort(rep.pairs.begin(), rep.pairs.end(),
                     [](const auto& x, const auto& y) { return x.weighted_l1 > y.weighted_l1; });
    return rep;
}

/// Four-way split at T_rev / 8. Sub-packets are indexed p = 0..3; the pair
/// (1, 3) of the middle packets is expected to dominate (0, 2) at the walls.
inline InterferenceReport eighth_revival_interference(const Propagator& prop, double t_cl)
{
    return interference_decomposition(prop, 1, 8, t_cl);
}

} // namespace ptcs

#endif // PTCS_REVIVAL_HPP
