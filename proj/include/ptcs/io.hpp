#ifndef PTCS_IO_HPP
#define PTCS_IO_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "ptcs/dynamics.hpp"
#include "ptcs/error.hpp"

namespace ptcs {

/// Writes through a sibling temporary file and renames it over `path`, so a
/// reader never sees a partial artifact.
inline void atomic_write(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body,
                         bool binary = false)
{
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream os(tmp, binary ? std::ios::out | std::ios::binary | std::ios::trunc
                                     : std::ios::out | std::ios::trunc);
        if (!os)
            throw DomainError("cannot open output file '" + path.string() + "'");
        body(os);
        os.flush();
        if (!os) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw DomainError("write failed for '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DomainError("cannot rename output into '" + path.string() + "'");
    }
}

namespace detail {

inline std::string fmt12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

inline void write_series_csv(std::ostream& os, const TimeSeries<double>& ts)
{
    os << "t_over_Trev,value\n";
    for (std::size_t i = 0; i < ts.times.size(); ++i)
        os << detail::fmt12(ts.times[i]) << ',' << detail::fmt12(ts.values[i]) << '\n';
}

inline void write_series_csv(std::ostream& os, const TimeSeries<Complex>& ts)
{
    os << "t_over_Trev,re,im\n";
    for (std::size_t i = 0; i < ts.times.size(); ++i)
        os << detail::fmt12(ts.times[i]) << ',' << detail::fmt12(ts.values[i].real()) << ','
           << detail::fmt12(ts.values[i].imag()) << '\n';
}

/// Header row of grid points after a leading `t_over_Trev` cell, then one row
/// per time.
inline void write_carpet_csv(std::ostream& os, const CarpetRaster& c)
{
    os << "t_over_Trev";
    for (double x : c.grid.points)
        os << ',' << detail::fmt12(x);
    os << '\n';
    for (std::size_t i = 0; i < c.rows(); ++i) {
        os << detail::fmt12(c.tgrid[i]);
        for (std::size_t j = 0; j < c.cols(); ++j)
            os << ',' << detail::fmt12(c.at(i, j));
        os << '\n';
    }
}

/// Binary 8-bit PGM, time increasing downward, intensity linear from 0 to the
/// raster maximum.
inline void write_carpet_pgm(std::ostream& os, const CarpetRaster& c)
{
    const double vmax = c.density.empty() ? 0.0 : *std::max_element(c.density.begin(), c.density.end());
    os << "P5\n" << c.cols() << ' ' << c.rows() << "\n255\n";
    std::vector<char> row(c.cols());
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = 0; j < c.cols(); ++j) {
            const double level = vmax > 0.0 ? std::lround(255.0 * c.at(i, j) / vmax) : 0;
            row[j] = static_cast<char>(static_cast<std::uint8_t>(std::clamp(level, 0.0, 255.0)));
        }
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

/// Long-format field samples: one row per (time, grid point).
inline void write_snapshots_csv(std::ostream& os, const std::vector<WaveSample>& samples,
                                const std::vector<double>& times_over_trev, const char* point_name)
{
    os << "t_over_Trev,y," << point_name << ",re,im,density\n";
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& w = samples[s];
        for (std::size_t j = 0; j < w.values.size(); ++j)
            os << detail::fmt12(times_over_trev[s]) << ',' << detail::fmt12(w.grid.positions[j]) << ','
               << detail::fmt12(w.grid.points[j]) << ',' << detail::fmt12(w.values[j].real()) << ','
               << detail::fmt12(w.values[j].imag()) << ',' << detail::fmt12(std::norm(w.values[j])) << '\n';
    }
}

} // namespace ptcs

#endif // PTCS_IO_HPP
