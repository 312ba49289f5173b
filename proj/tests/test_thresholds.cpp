#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kdgf/kdgf.hpp"

using namespace kdgf;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(ThresholdKe, Examples) {
    EXPECT_DOUBLE_EQ(threshold_ke(1.0, kPi / 2), 1.0);
    EXPECT_NEAR(threshold_ke(1.0, kPi / 6), 2.0, 1e-15);
    EXPECT_THROW(threshold_ke(1.0, kPi - 1e-10), InvalidInput);
    EXPECT_THROW(threshold_ke(1.0, 0.0), InvalidInput);
    EXPECT_THROW(threshold_ke(0.0, 1.0), InvalidInput);
}

TEST(ClusterSpec, KMinDirectEvaluation) {
    const auto s = cluster_spec(4, 3, kPi / 3, 1.0, 5.0);
    EXPECT_NEAR(s.k_min, 1.0 / (0.75 * std::sin(kPi / 3) - 0.5 * std::sin(kPi / 6)), 1e-14);
    EXPECT_TRUE(s.coupling_sufficient);
    EXPECT_FALSE(cluster_spec(4, 3, kPi / 3, 1.0, 1.0).coupling_sufficient);
}

// Step bound recomputed term by term from the proof constants.
TEST(ClusterSpec, StepBoundOracle) {
    const std::size_t N = 5, N0 = 4;
    const double l = 1.1, D = 0.3, K = 2.0;
    const auto s = cluster_spec(N, N0, l, D, K);
    const double n = N, n0 = N0, m = N - N0;
    const double A = n0 * (std::cos(l / 2) * (D + 2 * K) * (D + 2 * K) / 8 + (D + 2 * K) / 2);
    const double B = std::sin(l / 2) * D * D / 8 + D / 2;
    const double C = 2 * K * B / n * (n0 * std::cos(l / 2) - m);
    const double E = 2 * K * A / n * std::sin(l / 2);
    const double F = 2 * K / n * std::sin(l / 2) * (n0 * std::cos(l / 2) - m) - D;
    EXPECT_NEAR(s.a, A, 1e-13);
    EXPECT_NEAR(s.b, B, 1e-13);
    EXPECT_NEAR(s.c, C, 1e-13);
    EXPECT_NEAR(s.e, E, 1e-13);
    EXPECT_NEAR(s.f, F, 1e-13);
    const double h0 = std::min({(kPi - l) / (D + 2 * K), (n0 * std::cos(l / 2) - m) / A, l / D, F / (C + E)});
    EXPECT_NEAR(s.h_max, h0, 1e-15);
}

TEST(ClusterSpec, FullClusterCapIsPi) {
    const auto s = cluster_spec(4, 4, 3.0, 0.1, 1.0);
    EXPECT_NEAR(s.l_cap(), kPi, 1e-15);
    EXPECT_THROW(cluster_spec(4, 4, kPi, 0.1, 1.0), InvalidInput);
}

TEST(ClusterSpec, ZeroFrequencySpreadHasNoLOverDTerm) {
    const auto s = cluster_spec(3, 2, 0.5, 0.0, 1.0);
    EXPECT_EQ(s.k_min, 0.0);
    EXPECT_GT(s.h_max, 0.0);
    EXPECT_TRUE(std::isfinite(s.h_max));
}

TEST(ClusterSpec, RangeErrors) {
    EXPECT_THROW(cluster_spec(4, 2, 0.5, 0.1, 1.0), InvalidInput);
    EXPECT_THROW(cluster_spec(4, 5, 0.5, 0.1, 1.0), InvalidInput);
    EXPECT_THROW(cluster_spec(4, 3, 0.0, 0.1, 1.0), InvalidInput);
    EXPECT_THROW(cluster_spec(4, 3, 2.5, 0.1, 1.0), InvalidInput);  // cap 2 arccos(1/3) ~ 2.46
    EXPECT_THROW(cluster_spec(4, 3, 0.5, -0.1, 1.0), InvalidInput);
    EXPECT_THROW(cluster_spec(4, 3, 0.5, 0.1, 0.0), InvalidInput);
    EXPECT_THROW(cluster_spec(1, 1, 0.5, 0.1, 1.0), InvalidInput);
}

TEST(ClusterSpec, NonpositiveFGivesZeroStep) {
    // weak coupling: F = (2K/N) sin(l/2)(N0 cos(l/2) - (N - N0)) - D <= 0
    const auto s = cluster_spec(4, 3, 1.0, 5.0, 0.5);
    EXPECT_LE(s.f, 0.0);
    EXPECT_EQ(s.h_max, 0.0);
}
