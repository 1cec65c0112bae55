#ifndef PTCS_CLI_HPP
#define PTCS_CLI_HPP

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ptcs/classical.hpp"
#include "ptcs/coherent.hpp"
#include "ptcs/dynamics.hpp"
#include "ptcs/error.hpp"
#include "ptcs/io.hpp"
#include "ptcs/revival.hpp"

namespace ptcs::cli {

enum class Command { Coeffs, Snapshot, Carpet, Autocorr, Fractional, Xpect, Classical };
enum class Format { Csv, Pgm };

inline constexpr const char* kCommandNames[] = {"coeffs", "snapshot",   "carpet",   "autocorr",
                                                "fractional", "xpect", "classical"};

inline Command parse_command(const std::string& s)
{
    for (int i = 0; i < 7; ++i)
        if (s == kCommandNames[i])
            return static_cast<Command>(i);
    throw DomainError("unknown command '" + s + "'");
}

inline Family parse_family(const std::string& s)
{
    for (Family f : {Family::SptDocs, Family::SptAocs, Family::PtDocs})
        if (s == family_name(f))
            return f;
    throw DomainError("unknown family '" + s + "' (expected spt-docs, spt-aocs or pt-docs)");
}

struct RunConfig
{
    Command command = Command::Coeffs;
    Family family = Family::SptDocs;
    double alpha = 2.0;
    double rho = 10.0;
    std::optional<double> k;
    double mass = 1.0;
    std::optional<double> beta;
    std::optional<double> gamma;
    double tol = kDefaultTruncationTol;
    std::string coeffs_in;

    std::size_t nx = 512;
    std::size_t nt = 512;
    double t_min = 0.0;
    double t_max = 1.0;
    std::vector<double> times{0.0}; // snapshot times, units of T_rev
    std::string grid = "auto";      // auto | uniform | gauss

    long r = 1;
    long s = 8;
    std::string quantity = "abs2"; // autocorr: abs2 | complex
    std::string method = "closed"; // xpect: closed | quadrature | effective
    std::optional<double> energy;  // classical E_c
    double a = 0.0;                // classical length scale, 0 selects 1 / (2 alpha)

    Format format = Format::Csv;
    std::string output;
    unsigned threads = 1;
};

/// Checks cross-field constraints. Single-parameter domains are enforced by
/// the library constructors.
inline void validate(const RunConfig& c)
{
    const bool pt = c.family == Family::PtDocs;
    if (c.k && !pt)
        throw DomainError("--k applies only to the pt-docs family");
    if (c.gamma && c.family != Family::SptAocs)
        throw DomainError("--gamma applies only to the spt-aocs family");
    if (c.beta && c.family == Family::SptAocs)
        throw DomainError("--beta does not apply to the spt-aocs family (use --gamma)");
    if (c.nx < 2)
        throw DomainError("resolution --nx >= 2 required");
    if (c.nt < 2)
        throw DomainError("resolution --nt >= 2 required");
    if (!(c.t_max > c.t_min))
        throw DomainError("--t-max > --t-min required");
    if (c.format == Format::Pgm && c.command != Command::Carpet)
        throw DomainError("--format pgm is only available for carpet");
    if (c.grid != "auto" && c.grid != "uniform" && c.grid != "gauss")
        throw DomainError("--grid must be auto, uniform or gauss");
    if (c.command == Command::Autocorr && c.quantity != "abs2" && c.quantity != "complex")
        throw DomainError("--quantity must be abs2 or complex");
    if (c.command == Command::Xpect && c.method != "closed" && c.method != "quadrature" && c.method != "effective")
        throw DomainError("--method must be closed, quadrature or effective");
    if (c.command == Command::Xpect && c.method == "closed" && !pt)
        throw DomainError("xpect --method closed requires the pt-docs family");
    if (c.command == Command::Classical && !pt)
        throw DomainError("classical requires the pt-docs family");
    if (c.command == Command::Snapshot && c.times.empty())
        throw DomainError("snapshot needs at least one --t");
    if (c.threads < 1)
        throw DomainError("thread count must be positive");
}

inline Potential make_potential(const RunConfig& c)
{
    if (c.family == Family::PtDocs)
        return PtParams(c.alpha, c.rho, c.k.value_or(5.0), c.mass);
    return SptParams(c.alpha, c.rho, c.mass);
}

inline double coherence_param(const RunConfig& c)
{
    return c.family == Family::SptAocs ? c.gamma.value_or(30.0) : c.beta.value_or(0.8);
}

inline CoefficientSet make_coefficients(const RunConfig& c)
{
    const Potential pot = make_potential(c);
    const double param = coherence_param(c);
    if (!c.coeffs_in.empty()) {
        std::ifstream is(c.coeffs_in);
        if (!is)
            throw DomainError("cannot open --coeffs-in file '" + c.coeffs_in + "'");
        return {c.family, param, pot, read_coefficients_csv(is), c.tol};
    }
    switch (c.family) {
    case Family::SptDocs: return docs_coeffs(param, std::get<SptParams>(pot), c.tol);
    case Family::SptAocs: return aocs_coeffs(param, std::get<SptParams>(pot), c.tol);
    case Family::PtDocs: return pt_docs_coeffs(param, std::get<PtParams>(pot), c.tol);
    }
    throw DomainError("unknown family");
}

/// nt equally spaced times from t_min to t_max inclusive.
inline std::vector<double> time_grid(const RunConfig& c)
{
    std::vector<double> t(c.nt);
    for (std::size_t i = 0; i < c.nt; ++i)
        t[i] = c.t_min + (c.t_max - c.t_min) * static_cast<double>(i) / static_cast<double>(c.nt - 1);
    return t;
}

inline SpatialGrid make_grid(const RunConfig& c, const Potential& pot)
{
    const bool gauss = c.grid == "gauss" || (c.grid == "auto" && c.command == Command::Xpect);
    return gauss ? quadrature_grid(pot, c.nx) : uniform_grid(pot, c.nx);
}

inline std::string default_output(const RunConfig& c)
{
    return std::string(kCommandNames[static_cast<int>(c.command)]) + (c.format == Format::Pgm ? ".pgm" : ".csv");
}

/// Executes one run and prints a one-line summary to `out`.
inline void run(const RunConfig& c, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    validate(c);
    const std::string path = c.output.empty() ? default_output(c) : c.output;
    const auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    char line[256];

    if (c.command == Command::Fractional) {
        const auto fr = fractional_decomposition(c.r, c.s);
        std::snprintf(line, sizeof line, "l=%ld\n", fr.l);
        out << line;
        for (std::size_t p = 0; p < fr.a.size(); ++p) {
            std::snprintf(line, sizeof line, "a_%zu=%.15g%+.15gi\n", p, fr.a[p].real(), fr.a[p].imag());
            out << line;
        }
        atomic_write(path, [&](std::ostream& os) {
            os << "p,re,im\n";
            for (std::size_t p = 0; p < fr.a.size(); ++p)
                os << p << ',' << detail::fmt12(fr.a[p].real()) << ',' << detail::fmt12(fr.a[p].imag()) << '\n';
        });
        std::snprintf(line, sizeof line, "r/s=%ld/%ld l=%ld wall=%.3fs -> %s\n", c.r, c.s, fr.l, wall(), path.c_str());
        out << line;
        return;
    }

    const auto cs = make_coefficients(c);
    const Potential& pot = cs.potential();
    const double t_rev = revival_time(pot);

    switch (c.command) {
    case Command::Coeffs:
        atomic_write(path, [&](std::ostream& os) { write_coefficients_csv(os, cs); });
        break;
    case Command::Snapshot: {
        const Propagator prop(cs, make_grid(c, pot));
        std::vector<WaveSample> samples;
        for (double t : c.times)
            samples.push_back(prop.evolve(t * t_rev));
        const char* name = is_symmetric(pot) ? "xbar" : "u";
        atomic_write(path, [&](std::ostream& os) { write_snapshots_csv(os, samples, c.times, name); });
        break;
    }
    case Command::Carpet: {
        const auto raster = carpet(cs, make_grid(c, pot), time_grid(c), c.threads);
        if (c.format == Format::Pgm)
            atomic_write(path, [&](std::ostream& os) { write_carpet_pgm(os, raster); }, true);
        else
            atomic_write(path, [&](std::ostream& os) { write_carpet_csv(os, raster); });
        break;
    }
    case Command::Autocorr: {
        const auto tg = time_grid(c);
        const auto a = autocorrelation(cs, tg);
        if (c.quantity == "complex") {
            atomic_write(path, [&](std::ostream& os) { write_series_csv(os, a); });
        } else {
            const TimeSeries<double> a2{a.times, squared_modulus(a.values)};
            atomic_write(path, [&](std::ostream& os) { write_series_csv(os, a2); });
        }
        break;
    }
    case Command::Xpect: {
        TimeSeries<double> ts{time_grid(c), {}};
        if (c.method == "closed") {
            const ClosedFormPosition closed(cs);
            for (double t : ts.times)
                ts.values.push_back(closed(t * t_rev));
        } else {
            const Propagator prop(cs, make_grid(c, pot));
            for (double t : ts.times)
                ts.values.push_back(c.method == "quadrature" ? expectation_x_quadrature(prop, t * t_rev)
                                                             : effective_position_quadrature(prop, t * t_rev));
        }
        atomic_write(path, [&](std::ostream& os) { write_series_csv(os, ts); });
        break;
    }
    case Command::Classical: {
        const auto& p = std::get<PtParams>(pot);
        const auto cp = ClassicalParams::make(p, c.energy.value_or(mean_energy(cs)), c.a);
        TimeSeries<double> ts{time_grid(c), {}};
        for (double t : ts.times)
            ts.values.push_back(classical_trajectory(cp, p, t * t_rev));
        atomic_write(path, [&](std::ostream& os) { write_series_csv(os, ts); });
        break;
    }
    case Command::Fractional: break;
    }

    std::snprintf(line, sizeof line, "nbar=%.6f N=%zu wall=%.3fs -> %s\n", distribution_stats(cs).nbar,
                  cs.size() - 1, wall(), path.c_str());
    out << line;
}

} // namespace ptcs::cli

#endif // PTCS_CLI_HPP
