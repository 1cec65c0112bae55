#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "golden_values.hpp"
#include "ptcs/coherent.hpp"

using namespace ptcs;

namespace {

double norm2(const CoefficientSet& cs)
{
    double s = 0.0;
    for (double d : cs.coeffs())
        s += d * d;
    return s;
}

} // namespace

TEST(Coefficients, ZeroCoherenceParameterIsGroundState)
{
    const SptParams spt(2.0, 10.0);
    const PtParams pt(2.0, 5.0, 5.0);
    EXPECT_EQ(docs_coeffs(0.0, spt).coeffs(), std::vector<double>{1.0});
    EXPECT_EQ(aocs_coeffs(0.0, spt).coeffs(), std::vector<double>{1.0});
    EXPECT_EQ(pt_docs_coeffs(0.0, pt).coeffs(), std::vector<double>{1.0});
}

TEST(Coefficients, DocsMatchesGolden)
{
    const auto cs = docs_coeffs(0.8, SptParams(2.0, 10.0));
    ASSERT_GE(cs.size(), golden::kDocsBeta0p8Rho10.size());
    for (std::size_t n = 0; n < golden::kDocsBeta0p8Rho10.size(); ++n)
        EXPECT_NEAR(cs[n], golden::kDocsBeta0p8Rho10[n], 1e-12 * std::fabs(golden::kDocsBeta0p8Rho10[n]) + 1e-16)
            << "n=" << n;
    const auto st = distribution_stats(cs);
    EXPECT_EQ(st.argmax, golden::kDocsBeta0p8Rho10Argmax);
    EXPECT_EQ(st.support_lo, 0u);
    EXPECT_EQ(st.support_hi, golden::kDocsBeta0p8Rho10SupportHi);
    EXPECT_NEAR(st.nbar, golden::kDocsBeta0p8Rho10Nbar, 1e-10);
}

TEST(Coefficients, GeneralWellDocsMatchesGolden)
{
    const auto cs = pt_docs_coeffs(0.8, PtParams(2.0, 5.0, 5.0));
    ASSERT_GE(cs.size(), golden::kPtDocsBeta0p8Rho5K5.size());
    for (std::size_t n = 0; n < golden::kPtDocsBeta0p8Rho5K5.size(); ++n)
        EXPECT_NEAR(cs[n], golden::kPtDocsBeta0p8Rho5K5[n],
                    1e-12 * std::fabs(golden::kPtDocsBeta0p8Rho5K5[n]) + 1e-16);
}

TEST(Coefficients, SmallBetaGeneralWellIsNarrow)
{
    const auto st = distribution_stats(pt_docs_coeffs(0.1, PtParams(2.0, 5.0, 5.0)));
    EXPECT_EQ(st.argmax, 0u);
    EXPECT_LT(st.nbar, 0.05);
    EXPECT_LE(st.support_hi, 4u);
}

TEST(Coefficients, NormalizedAndFinite)
{
    for (double rho : {1.5, 5.0, 10.0, 15.0}) {
        const SptParams p(1.0, rho);
        for (double b : {0.1, 0.5, 0.8, 0.95, -0.6})
            EXPECT_NEAR(norm2(docs_coeffs(b, p)), 1.0, 1e-12);
        for (double g : {0.5, 5.0, 30.0, 200.0})
            EXPECT_NEAR(norm2(aocs_coeffs(g, p)), 1.0, 1e-12);
        EXPECT_NEAR(norm2(pt_docs_coeffs(0.7, PtParams(1.0, rho, 5.0))), 1.0, 1e-12);
    }
}

TEST(Coefficients, SignPattern)
{
    const auto docs = docs_coeffs(0.8, SptParams(2.0, 10.0));
    for (std::size_t n = 0; n < docs.size(); ++n)
        EXPECT_EQ(docs[n] > 0, n % 2 == 0) << n;
    const auto aocs = aocs_coeffs(30.0, SptParams(2.0, 10.0));
    for (double d : aocs.coeffs())
        EXPECT_GT(d, 0.0);
}

TEST(Coefficients, TruncationInvariants)
{
    const double tol = 1e-8;
    const SptParams p(2.0, 10.0);
    const auto cs = docs_coeffs(0.8, p, tol);
    double dmax = 0.0;
    for (double d : cs.coeffs())
        dmax = std::max(dmax, std::fabs(d));
    EXPECT_LT(std::fabs(cs.coeffs().back()) / dmax, tol);

    // Explicit tail mass of the untruncated series relative to the retained mass.
    const std::size_t n_last = cs.size() - 1;
    const double ref = docs_term(0.8, p, static_cast<unsigned>(n_last)).log_magnitude;
    double kept = 0.0;
    for (std::size_t n = 0; n <= n_last; ++n)
        kept += std::exp(2 * (docs_term(0.8, p, static_cast<unsigned>(n)).log_magnitude - ref));
    double tail = 0.0;
    for (std::size_t n = n_last + 1; n < n_last + 2000; ++n)
        tail += std::exp(2 * (docs_term(0.8, p, static_cast<unsigned>(n)).log_magnitude - ref));
    EXPECT_LT(tail / kept, tol * tol);
}

TEST(Coefficients, TruncationStability)
{
    const SptParams p(2.0, 10.0);
    for (double tol : {1e-4, 1e-6, 1e-8}) {
        const auto a = docs_coeffs(0.8, p, tol);
        const auto b = docs_coeffs(0.8, p, tol / 2);
        ASSERT_LE(a.size(), b.size());
        // Halving tol shifts the retained coefficients only through the global
        // normalization, which changes by the extra tail mass (< tol^2).
        for (std::size_t n = 0; n < a.size(); ++n)
            EXPECT_LT(std::fabs(std::fabs(a[n]) - std::fabs(b[n])), tol * tol) << "tol=" << tol;
    }
    const auto a = docs_coeffs(0.8, p, 1e-8);
    const auto b = docs_coeffs(0.8, p, 5e-9);
    for (std::size_t n = 0; n < a.size(); ++n)
        EXPECT_LT(std::fabs(a[n] - b[n]), 1e-12);
}

// (d_{n+1}/d_n)^2 of the unnormalized closed forms, for n <= 100.
TEST(Coefficients, RatioIdentities)
{
    for (double rho : {1.5, 5.0, 10.0, 15.0}) {
        const SptParams p(1.0, rho);
        const PtParams q(1.0, rho, 5.0);
        const double beta = 0.73;
        const double gamma = 11.0;
        for (unsigned n = 0; n < 100; ++n) {
            const double nn = n;
            const double docs = std::exp(2 * (docs_term(beta, p, n + 1).log_magnitude - docs_term(beta, p, n).log_magnitude));
            const double docs_want = beta * beta * (rho + nn + 0.5) * (rho + nn + 0.5) * (nn + rho) /
                                     ((2 * rho + nn) * (nn + 1) * (nn + rho + 1));
            EXPECT_NEAR(docs, docs_want, 1e-10 * docs_want);

            const double aocs = std::exp(2 * (aocs_term(gamma, p, n + 1).log_magnitude - aocs_term(gamma, p, n).log_magnitude));
            const double aocs_want = gamma * gamma * (nn + rho) / ((2 * rho + nn) * (nn + 1) * (nn + rho + 1));
            EXPECT_NEAR(aocs, aocs_want, 1e-10 * aocs_want);

            const double k = 5.0;
            const double pt = std::exp(2 * (pt_docs_term(beta, q, n + 1).log_magnitude - pt_docs_term(beta, q, n).log_magnitude));
            const double pt_want = beta * beta * (k + nn + 0.5) * (rho + nn + 0.5) * (k + rho + 2 * nn) /
                                   ((k + rho + 2 * nn + 2) * (nn + 1) * (k + rho + nn));
            EXPECT_NEAR(pt, pt_want, 1e-10 * pt_want);
        }
    }
}

TEST(Coefficients, DivergentDisplacementSeriesReportsNonConvergence)
{
    EXPECT_THROW(docs_coeffs(1.0, SptParams(2.0, 10.0)), NumericalError);
    EXPECT_THROW(pt_docs_coeffs(-1.3, PtParams(2.0, 5.0, 5.0)), NumericalError);
    EXPECT_THROW(docs_coeffs(0.5, SptParams(2.0, 10.0), 0.0), DomainError);
}

TEST(Stats, GroundState)
{
    const auto st = distribution_stats(docs_coeffs(0.0, SptParams(2.0, 10.0)));
    EXPECT_EQ(st.nbar, 0.0);
    EXPECT_EQ(st.variance, 0.0);
    EXPECT_EQ(st.argmax, 0u);
    EXPECT_EQ(st.support_lo, 0u);
    EXPECT_EQ(st.support_hi, 0u);
}

TEST(Stats, ParametersPeakingAtNine)
{
    const SptParams p(1.0, 15.0);
    const auto docs = distribution_stats(docs_coeffs(golden::kPeak9Beta, p));
    const auto aocs = distribution_stats(aocs_coeffs(golden::kPeak9Gamma, p));
    EXPECT_EQ(docs.argmax, 9u);
    EXPECT_EQ(aocs.argmax, 9u);
    EXPECT_NEAR(docs.variance, golden::kPeak9DocsVariance, 1e-9);
    EXPECT_NEAR(aocs.variance, golden::kPeak9AocsVariance, 1e-9);
    EXPECT_LT(aocs.variance, docs.variance);
    EXPECT_EQ(docs.support_hi, golden::kPeak9DocsSupportHi);
    EXPECT_EQ(aocs.support_hi, golden::kPeak9AocsSupportHi);
    // The argmax-9 window edges found by the independent scan.
    EXPECT_EQ(distribution_stats(docs_coeffs(golden::kPeak9BetaLo, p)).argmax, 9u);
    EXPECT_EQ(distribution_stats(docs_coeffs(golden::kPeak9BetaHi, p)).argmax, 9u);
    EXPECT_EQ(distribution_stats(aocs_coeffs(golden::kPeak9GammaLo, p)).argmax, 9u);
    EXPECT_EQ(distribution_stats(aocs_coeffs(golden::kPeak9GammaHi, p)).argmax, 9u);
}

TEST(Stats, LargerBetaFlattensDocs)
{
    const SptParams p(1.0, 15.0);
    double prev = distribution_stats(docs_coeffs(0.8, p)).variance;
    for (double b : {0.85, 0.9, 0.95}) {
        const double v = distribution_stats(docs_coeffs(b, p)).variance;
        EXPECT_GT(v, prev) << b;
        prev = v;
    }
}

TEST(Stats, AocsSharperThanDocsAtRhoTen)
{
    const SptParams p(2.0, 10.0);
    EXPECT_LT(distribution_stats(aocs_coeffs(30.0, p)).variance, distribution_stats(docs_coeffs(0.8, p)).variance);
}

TEST(Csv, WritesHeaderAndFullPrecision)
{
    std::ostringstream os;
    write_coefficients_csv(os, docs_coeffs(0.0, SptParams(2.0, 10.0)));
    EXPECT_EQ(os.str(), "n,d_n\n0,1.0000000000000000e+00\n");
}

TEST(Csv, RoundTripIsExact)
{
    const auto cs = docs_coeffs(0.8, SptParams(2.0, 10.0));
    std::stringstream ss;
    write_coefficients_csv(ss, cs);
    const auto back = read_coefficients_csv(ss);
    EXPECT_EQ(back, cs.coeffs());
}

TEST(Csv, RejectsMalformedInput)
{
    std::istringstream bad_header("k,v\n0,1\n");
    EXPECT_THROW(read_coefficients_csv(bad_header), DomainError);
    std::istringstream gap("n,d_n\n0,1\n2,0.5\n");
    EXPECT_THROW(read_coefficients_csv(gap), DomainError);
    std::istringstream junk("n,d_n\n0,abc\n");
    EXPECT_THROW(read_coefficients_csv(junk), DomainError);
}

TEST(CoefficientSetType, RejectsUnnormalizedOrMismatched)
{
    EXPECT_THROW(CoefficientSet(Family::SptDocs, 0.1, SptParams(2.0, 10.0), {0.5, 0.5}, 1e-8), DomainError);
    EXPECT_THROW(CoefficientSet(Family::PtDocs, 0.1, SptParams(2.0, 10.0), {1.0}, 1e-8), DomainError);
}
