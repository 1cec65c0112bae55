#ifndef PTCS_COHERENT_HPP
#define PTCS_COHERENT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ptcs/eigensystem.hpp"
#include "ptcs/error.hpp"
#include "ptcs/specfun.hpp"

namespace ptcs {

enum class Family { SptDocs, SptAocs, PtDocs };

inline const char* family_name(Family f)
{
    switch (f) {
    case Family::SptDocs: return "spt-docs";
    case Family::SptAocs: return "spt-aocs";
    case Family::PtDocs: return "pt-docs";
    }
    return "?";
}

inline constexpr double kDefaultTruncationTol = 1e-8;
inline constexpr std::size_t kMaxCoefficients = 10000;

/// Truncated, L2-normalized expansion coefficients d_0 .. d_N of a coherent
/// state over the bound-state eigenbasis of one well.
class CoefficientSet
{
public:
    CoefficientSet(Family family, double coherence_param, Potential potential,
                   std::vector<double> coeffs, double truncation_tol)
        : family_(family), coherence_param_(coherence_param), potential_(std::move(potential)),
          coeffs_(std::move(coeffs)), truncation_tol_(truncation_tol)
    {
        if (coeffs_.empty())
            throw DomainError("CoefficientSet: empty coefficient vector");
        const bool pt = std::holds_alternative<PtParams>(potential_);
        if (pt != (family_ == Family::PtDocs))
            throw DomainError("CoefficientSet: family does not match the potential");
        double norm = 0.0;
        for (double d : coeffs_) {
            if (!std::isfinite(d))
                throw NumericalError("CoefficientSet: non-finite coefficient");
            norm += d * d;
        }
        if (std::fabs(norm - 1.0) > 1e-12)
            throw DomainError("CoefficientSet: coefficients are not normalized");
    }

    Family family() const { return family_; }
    double coherence_param() const { return coherence_param_; }
    const Potential& potential() const { return potential_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double truncation_tol() const { return truncation_tol_; }

    /// Number of retained coefficients (N + 1).
    std::size_t size() const { return coeffs_.size(); }
    double operator[](std::size_t n) const { return coeffs_[n]; }

private:
    Family family_;
    double coherence_param_;
    Potential potential_;
    std::vector<double> coeffs_;
    double truncation_tol_;
};

namespace detail {

// Builds a normalized, truncated coefficient vector from the unnormalized
// weights term(n). `tail_ratio_limit` is lim (d_{n+1}/d_n)^2.
//
// Truncation: stop at the first N past the running peak with
// |d_N|^2 / max|d|^2 < tol^2 whose geometric tail majorant
// |d_N|^2 q / (1 - q), q = max((d_{N+1}/d_N)^2, limit), is below tol^2 of the
// accumulated mass.
inline std::vector<double> truncate_and_normalize(const std::function<LogWeight(unsigned)>& term,
                                                  double tail_ratio_limit, double tol)
{
    if (!(tol > 0 && tol < 1))
        throw DomainError("truncation tolerance must lie in (0, 1)");
    std::vector<LogWeight> w;
    w.push_back(term(0));
    double log_peak = w[0].log_magnitude;
    std::size_t peak = 0;
    const double log_tol2 = 2.0 * std::log(tol);
    std::size_t last = 0;
    bool done = false;
    for (unsigned n = 1; n < kMaxCoefficients; ++n) {
        w.push_back(term(n));
        const LogWeight& cur = w[n - 1];
        const LogWeight& next = w[n];
        if (cur.log_magnitude > log_peak) {
            log_peak = cur.log_magnitude;
            peak = n - 1;
        }
        if (n - 1 <= peak)
            continue;
        const double rel = 2.0 * (cur.log_magnitude - log_peak);
        if (rel >= log_tol2)
            continue;
        const double q = std::max(std::exp(2.0 * (next.log_magnitude - cur.log_magnitude)),
                                  tail_ratio_limit);
        if (!(q < 1.0))
            continue;
        // Mass so far relative to the peak, and the tail bound in the same scale.
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mass += std::exp(2.0 * (w[i].log_magnitude - log_peak));
        const double tail = std::exp(rel) * q / (1.0 - q);
        if (tail < std::exp(log_tol2) * mass) {
            last = n - 1;
            done = true;
            break;
        }
    }
    if (!done)
        throw NumericalError("coherent state coefficients did not converge within " +
                             std::to_string(kMaxCoefficients) + " terms");
    std::vector<double> d(last + 1);
    double norm = 0.0;
    for (std::size_t i = 0; i <= last; ++i) {
        const double v = std::exp(w[i].log_magnitude - log_peak);
        d[i] = w[i].sign * v;
        norm += v * v;
    }
    const double s = 1.0 / std::sqrt(norm);
    for (double& v : d)
        v *= s;
    return d;
}

inline LogWeight signed_power(double base, unsigned n)
{
    if (n == 0)
        return LogWeight::one();
    if (base == 0.0)
        return LogWeight::zero();
    return {n * std::log(std::fabs(base)), (base < 0 && n % 2 == 1) ? -1 : 1};
}

} // namespace detail

/// Unnormalized displacement-operator coefficient of the symmetric well,
///   d_n = (-beta)^n [Gamma(rho + n + 1/2)^2 / (Gamma(2 rho + n) n! (n + rho))]^{1/2}.
inline LogWeight docs_term(double beta, const SptParams& p, unsigned n)
{
    const double r = p.rho();
    const double n1 = n;
    const LogWeight radicand = gamma_weight(r + n1 + 0.5).pow(2.0) / gamma_weight(2.0 * r + n1) /
                               gamma_weight(n1 + 1.0) / LogWeight::from_value(n1 + r);
    return detail::signed_power(-beta, n) * radicand.sqrt();
}

/// Unnormalized annihilation-operator coefficient of the symmetric well,
///   d_n = gamma^n [1 / (Gamma(2 rho + n) n! (n + rho))]^{1/2}.
inline LogWeight aocs_term(double gamma, const SptParams& p, unsigned n)
{
    const double r = p.rho();
    const double n1 = n;
    const LogWeight radicand = LogWeight::one() / gamma_weight(2.0 * r + n1) /
                               gamma_weight(n1 + 1.0) / LogWeight::from_value(n1 + r);
    return detail::signed_power(gamma, n) * radicand.sqrt();
}

/// Unnormalized displacement-operator coefficient of the general well,
///   d_n = (-beta)^n [Gamma(k + n + 1/2) Gamma(rho + n + 1/2) /
///                    ((k + rho + 2n) n! Gamma(k + rho + n))]^{1/2}.
inline LogWeight pt_docs_term(double beta, const PtParams& p, unsigned n)
{
    const double r = p.rho();
    const double k = p.k();
    const double n1 = n;
    const LogWeight radicand = gamma_weight(k + n1 + 0.5) * gamma_weight(r + n1 + 0.5) /
                               LogWeight::from_value(k + r + 2.0 * n1) / gamma_weight(n1 + 1.0) /
                               gamma_weight(k + r + n1);
    return detail::signed_power(-beta, n) * radicand.sqrt();
}

inline CoefficientSet docs_coeffs(double beta, const SptParams& p, double tol = kDefaultTruncationTol)
{
    if (!std::isfinite(beta))
        throw DomainError("beta must be finite");
    if (beta == 0.0)
        return {Family::SptDocs, beta, p, {1.0}, tol};
    auto d = detail::truncate_and_normalize([&](unsigned n) { return docs_term(beta, p, n); },
                                            beta * beta, tol);
    return {Family::SptDocs, beta, p, std::move(d), tol};
}

inline CoefficientSet aocs_coeffs(double gamma, const SptParams& p, double tol = kDefaultTruncationTol)
{
    if (!std::isfinite(gamma))
        throw DomainError("gamma must be finite");
    if (gamma == 0.0)
        return {Family::SptAocs, gamma, p, {1.0}, tol};
    auto d = detail::truncate_and_normalize([&](unsigned n) { return aocs_term(gamma, p, n); },
                                            0.0, tol);
    return {Family::SptAocs, gamma, p, std::move(d), tol};
}

inline CoefficientSet pt_docs_coeffs(double beta, const PtParams& p, double tol = kDefaultTruncationTol)
{
    if (!std::isfinite(beta))
        throw DomainError("beta must be finite");
    if (beta == 0.0)
        return {Family::PtDocs, beta, p, {1.0}, tol};
    auto d = detail::truncate_and_normalize([&](unsigned n) { return pt_docs_term(beta, p, n); },
                                            beta * beta, tol);
    return {Family::PtDocs, beta, p, std::move(d), tol};
}

struct DistributionStats
{
    double nbar;
    double variance;
    std::size_t argmax;
    std::size_t support_lo;
    std::size_t support_hi;
};

/// Moments of n under |d_n|^2. The support is the smallest index interval
/// holding every n with |d_n|^2 >= 1e-4 max |d_n|^2.
inline DistributionStats distribution_stats(const CoefficientSet& cs)
{
    DistributionStats s{0.0, 0.0, 0, 0, 0};
    double pmax = 0.0;
    for (std::size_t n = 0; n < cs.size(); ++n) {
        const double p = cs[n] * cs[n];
        s.nbar += n * p;
        if (p > pmax) {
            pmax = p;
            s.argmax = n;
        }
    }
    for (std::size_t n = 0; n < cs.size(); ++n) {
        const double p = cs[n] * cs[n];
        const double dn = n - s.nbar;
        s.variance += dn * dn * p;
    }
    bool found = false;
    for (std::size_t n = 0; n < cs.size(); ++n) {
        if (cs[n] * cs[n] >= 1e-4 * pmax) {
            if (!found)
                s.support_lo = n;
            s.support_hi = n;
            found = true;
        }
    }
    return s;
}

/// Mean energy sum_n |d_n|^2 E_n.
inline double mean_energy(const CoefficientSet& cs)
{
    double e = 0.0;
    for (std::size_t n = 0; n < cs.size(); ++n)
        e += cs[n] * cs[n] * energy(cs.potential(), static_cast<unsigned>(n));
    return e;
}

// ---------------------------------------------------------------------------
// CSV: header `n,d_n`, one row per coefficient, 17 significant digits.

inline void write_coefficients_csv(std::ostream& os, const CoefficientSet& cs)
{
    os << "n,d_n\n";
    char buf[64];
    for (std::size_t n = 0; n < cs.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu,%.16e\n", n, cs[n]);
        os << buf;
    }
}

/// Reads the coefficient column back. Rows must be numbered 0, 1, 2, ...
inline std::vector<double> read_coefficients_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != "n,d_n")
        throw DomainError("coefficient CSV: expected header 'n,d_n'");
    std::vector<double> out;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DomainError("coefficient CSV: malformed row '" + line + "'");
        std::size_t idx = 0;
        double value = 0.0;
        try {
            idx = std::stoul(line.substr(0, comma));
            value = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw DomainError("coefficient CSV: malformed row '" + line + "'");
        }
        if (idx != out.size())
            throw DomainError("coefficient CSV: rows out of order");
        out.push_back(value);
    }
    if (out.empty())
        throw DomainError("coefficient CSV: no rows");
    return out;
}

} // namespace ptcs

#endif // PTCS_COHERENT_HPP
