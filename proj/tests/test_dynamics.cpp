#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "golden_values.hpp"
#include "ptcs/dynamics.hpp"

using namespace ptcs;

namespace {

constexpr double kPi = std::numbers::pi;

struct Fixture
{
    SptParams params{2.0, 10.0};
    CoefficientSet cs = docs_coeffs(0.8, params);
    SpatialGrid grid = quadrature_grid(params, 800);
    Propagator prop{cs, grid};
    double t_rev = revival_time(params);
};

double peak(const std::vector<double>& v)
{
    return *std::max_element(v.begin(), v.end());
}

std::size_t argmax(const std::vector<double>& v)
{
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

} // namespace

TEST(RevivalTimes, Examples)
{
    const SptParams p(2.0, 10.0);
    EXPECT_NEAR(revival_time(p), kPi, 1e-15);
    const auto rt = revival_times(p, 9.0);
    EXPECT_NEAR(rt.t_rev, kPi, 1e-15);
    EXPECT_NEAR(rt.t_cl_literal, kPi / 20.0, 1e-15);
    EXPECT_NEAR(rt.t_cl_derivative, kPi / 38.0, 1e-15);
    EXPECT_NEAR(revival_time(SptParams(1.0, 3.0, 2.0)), 8.0 * kPi, 1e-13);
    EXPECT_NEAR(revival_time(PtParams(2.0, 5.0, 5.0)), kPi / 4.0, 1e-15);
}

TEST(Evolve, InitialFieldIsRealSuperposition)
{
    Fixture f;
    const auto w = f.prop.evolve(0.0);
    for (std::size_t j = 0; j < f.grid.size(); ++j) {
        double direct = 0.0;
        for (std::size_t n = 0; n < f.cs.size(); ++n)
            direct += f.cs[n] * f.prop.basis().state(n)[j];
        EXPECT_EQ(w.values[j].imag(), 0.0);
        EXPECT_NEAR(w.values[j].real(), direct, 1e-13);
    }
}

TEST(Evolve, UnitarityAtRandomTimes)
{
    Fixture f;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i)
        EXPECT_NEAR(f.prop.evolve(u(rng) * f.t_rev).norm(), 1.0, 1e-8);
    const PtParams q(2.0, 5.0, 5.0);
    const Propagator pq(pt_docs_coeffs(0.8, q), quadrature_grid(q, 800));
    for (int i = 0; i < 20; ++i)
        EXPECT_NEAR(pq.evolve(u(rng) * revival_time(q)).norm(), 1.0, 1e-8);
}

TEST(Evolve, ExactRevivalUpToGlobalPhase)
{
    Fixture f;
    const auto w0 = f.prop.evolve(0.0);
    const auto wt = f.prop.evolve(f.t_rev);
    const std::size_t jmax = argmax(w0.density());
    const Complex phase = wt.values[jmax] / w0.values[jmax];
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-10);
    double worst = 0.0;
    for (std::size_t j = 0; j < f.grid.size(); ++j)
        worst = std::max(worst, std::abs(wt.values[j] - phase * w0.values[j]));
    EXPECT_LT(worst, 1e-10 * std::abs(w0.values[jmax]));
}

TEST(Evolve, MirrorRevivalAtHalfPeriod)
{
    Fixture f;
    const auto p0 = f.prop.evolve(0.0).density();
    const auto ph = f.prop.evolve(0.5 * f.t_rev).density();
    const std::size_t n = p0.size();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::fabs(ph[j] - p0[n - 1 - j]));
    EXPECT_LE(worst, 1e-10 * peak(p0));
}

TEST(Evolve, QuarterRevivalIsSymmetrizedInitialDensity)
{
    Fixture f;
    const auto p0 = f.prop.evolve(0.0).density();
    const auto pq = f.prop.evolve(0.25 * f.t_rev).density();
    const std::size_t n = p0.size();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::fabs(pq[j] - 0.5 * (p0[j] + p0[n - 1 - j])));
    EXPECT_LE(worst, 1e-10 * peak(p0));
}

// With (-beta)^n the displacement packet starts against the left wall and the
// annihilation-operator packet (+gamma)^n against the right one.
TEST(Evolve, InitialPacketWall)
{
    const SptParams p(2.0, 10.0);
    const auto grid = quadrature_grid(p, 800);
    const auto mean_x = [&](const CoefficientSet& cs) {
        const auto w = evolve(cs, grid, 0.0);
        double s = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j)
            s += grid.weights[j] * grid.points[j] * std::norm(w.values[j]);
        return s;
    };
    EXPECT_LT(mean_x(docs_coeffs(0.8, p)), -0.3);
    EXPECT_GT(mean_x(docs_coeffs(-0.8, p)), 0.3);
    EXPECT_GT(mean_x(aocs_coeffs(30.0, p)), 0.3);
    EXPECT_NEAR(mean_x(docs_coeffs(0.0, p)), 0.0, 1e-14);
}

TEST(Autocorrelation, BoundAndSpecialTimes)
{
    Fixture f;
    std::vector<double> tg;
    for (int i = 0; i <= 2000; ++i)
        tg.push_back(i / 2000.0);
    const auto a = autocorrelation(f.cs, tg);
    ASSERT_EQ(a.values.size(), tg.size());
    EXPECT_NEAR(a.values.front().real(), 1.0, 1e-15);
    for (const auto& z : a.values)
        EXPECT_LE(std::abs(z), 1.0 + 1e-14);
    EXPECT_NEAR(std::abs(a.values.back()), 1.0, 1e-12);
    EXPECT_NEAR(a.values[1000].real(), golden::kDocsBeta0p8Rho10AutocorrHalf, 1e-12);
    EXPECT_LT(std::norm(a.values[1000]), 1e-6);
    EXPECT_NEAR(std::norm(a.values[500]), golden::kDocsBeta0p8Rho10AutocorrQuarterAbs2, 1e-9);
}

// A(T/2) = sum_n (-1)^{n + rho} |d_n|^2 for integer rho.
TEST(Autocorrelation, HalfPeriodParitySum)
{
    Fixture f;
    double s = 0.0;
    for (std::size_t n = 0; n < f.cs.size(); ++n)
        s += ((n + 10) % 2 == 0 ? 1.0 : -1.0) * f.cs[n] * f.cs[n];
    const std::vector<double> half{0.5};
    const auto a = autocorrelation(f.cs, half);
    EXPECT_NEAR(a.values[0].real(), s, 1e-12);
    EXPECT_NEAR(a.values[0].imag(), 0.0, 1e-12);
}

TEST(Autocorrelation, QuarterPeakStructure)
{
    Fixture f;
    const std::vector<double> tg{0.2, 0.24, 0.25, 0.26, 0.3};
    const auto a2 = squared_modulus(autocorrelation(f.cs, tg).values);
    EXPECT_GT(a2[2], a2[1]);
    EXPECT_GT(a2[2], a2[3]);
    EXPECT_GT(a2[2], a2[0]);
    EXPECT_GT(a2[2], a2[4]);
}

TEST(Autocorrelation, PhaseSumMatchesQuadratureOverlap)
{
    Fixture f;
    const auto w0 = f.prop.evolve(0.0);
    std::vector<double> tg;
    for (int i = 0; i < 40; ++i)
        tg.push_back(0.0173 + i / 40.0);
    const auto a = autocorrelation(f.cs, tg);
    for (std::size_t i = 0; i < tg.size(); ++i) {
        const Complex q = overlap(f.prop.evolve(tg[i] * f.t_rev), w0);
        EXPECT_LT(std::abs(q - a.values[i]), 1e-7) << tg[i];
    }
    const PtParams p(2.0, 5.0, 5.0);
    const auto cs = pt_docs_coeffs(0.8, p);
    const Propagator pp(cs, quadrature_grid(p, 800));
    const auto a_pt = autocorrelation(cs, tg);
    const auto v0 = pp.evolve(0.0);
    for (std::size_t i = 0; i < tg.size(); i += 7)
        EXPECT_LT(std::abs(overlap(pp.evolve(tg[i] * revival_time(p)), v0) - a_pt.values[i]), 1e-7);
}

TEST(Autocorrelation, HalfIntegerRhoRevivesFullyAtHalfPeriod)
{
    const auto cs = docs_coeffs(0.6, SptParams(2.0, 2.5));
    const std::vector<double> tg{0.5, 1.0};
    const auto a = autocorrelation(cs, tg);
    EXPECT_NEAR(std::abs(a.values[0]), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(a.values[1]), 1.0, 1e-12);
}

TEST(Carpet, StationaryStateRowsIdentical)
{
    const SptParams p(2.0, 10.0);
    const std::vector<double> tg{0.0, 0.1, 0.37, 0.5};
    const auto c = carpet(docs_coeffs(0.0, p), uniform_grid(p, 64), tg);
    for (std::size_t i = 1; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j)
            EXPECT_NEAR(c.at(i, j), c.at(0, j), 1e-13);
}

TEST(Carpet, RowsIntegrateToOne)
{
    const SptParams p(2.0, 10.0);
    std::vector<double> tg(512);
    for (std::size_t i = 0; i < tg.size(); ++i)
        tg[i] = static_cast<double>(i) / 511.0;
    const auto c = carpet(docs_coeffs(0.8, p), uniform_grid(p, 512), tg, 4);
    for (std::size_t i = 0; i < c.rows(); ++i)
        EXPECT_NEAR(c.row_integral(i), 1.0, 1e-6) << i;
    for (double v : c.density)
        EXPECT_GE(v, 0.0);
}

TEST(Carpet, BitwiseIdenticalForAnyWorkerCount)
{
    const SptParams p(2.0, 10.0);
    const auto cs = docs_coeffs(0.8, p);
    const auto grid = uniform_grid(p, 96);
    std::vector<double> tg(37);
    for (std::size_t i = 0; i < tg.size(); ++i)
        tg[i] = static_cast<double>(i) / 36.0;
    const auto ref = carpet(cs, grid, tg, 1);
    for (unsigned w : {2u, 3u, 8u, 64u})
        EXPECT_EQ(carpet(cs, grid, tg, w).density, ref.density) << w;
}

TEST(Carpet, MirrorRidgeAndQuarterEdgeSpots)
{
    const SptParams p(2.0, 10.0);
    const auto grid = uniform_grid(p, 512);
    const std::vector<double> tg{0.0, 0.25, 0.5};
    const auto c = carpet(docs_coeffs(0.8, p), grid, tg);
    const auto row = [&](std::size_t i) {
        return std::vector<double>(c.density.begin() + i * c.cols(), c.density.begin() + (i + 1) * c.cols());
    };
    const auto r0 = row(0);
    const auto rq = row(1);
    const auto rh = row(2);
    const std::size_t n = c.cols();
    // Ridge at the mirror of the initial peak.
    EXPECT_EQ(argmax(rh), n - 1 - argmax(r0));
    EXPECT_GT(grid.points[argmax(rh)], 0.3);
    // Two equal spots near both ends, nothing comparable in the middle.
    const std::vector<double> left(rq.begin(), rq.begin() + n / 2);
    const std::vector<double> right(rq.begin() + n / 2, rq.end());
    EXPECT_NEAR(peak(left), peak(right), 1e-10 * peak(rq));
    EXPECT_LT(grid.points[argmax(left)], -0.3);
    EXPECT_GT(grid.points[n / 2 + argmax(right)], 0.3);
    EXPECT_LT(rq[n / 2], 0.1 * peak(rq));
}

TEST(Carpet, RejectsEmptyGrids)
{
    const SptParams p(2.0, 10.0);
    EXPECT_THROW(carpet(docs_coeffs(0.8, p), uniform_grid(p, 16), std::vector<double>{}), DomainError);
}
