#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kdgf/kdgf.hpp"
#include "test_util.hpp"

using namespace kdgf;

namespace {
constexpr double kPi = std::numbers::pi;

double exact_mean(const std::vector<double>& v) {
    CompensatedSum s;
    for (double x : v) s.add(x);
    return s.value() / static_cast<double>(v.size());
}
}  // namespace

TEST(EquilibriumState, PhiStarFormulas) {
    const auto s = EquilibriumState::sync({1, 0, -2, 0});
    EXPECT_DOUBLE_EQ(s.phi_star(), -(2 * kPi * (1 + 0 - 2 + 0)) / 4.0);
    EXPECT_FALSE(s.bipolar_index().has_value());

    const auto b = EquilibriumState::bipolar({0, 1, 2}, 1);
    // -(1/N)[sum_{j != b} 2 k_j pi + (2 k_b + 1) pi]
    EXPECT_DOUBLE_EQ(b.phi_star(), -(2 * kPi * (0 + 2) + 3 * kPi) / 3.0);
    EXPECT_EQ(b.bipolar_index(), 1u);
    EXPECT_THROW(EquilibriumState::bipolar({0, 0}, 2), InvalidInput);
    EXPECT_EQ(std::signbit(EquilibriumState::sync({0, 0}).phi_star()), false);
}

TEST(EquilibriumState, ReconstructionZeroMeanAndCritical) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> k(-3, 3);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + t % 7;
        std::vector<std::int64_t> w(n);
        for (auto& x : w) x = k(rng);
        const auto eq = (t % 2 == 0) ? EquilibriumState::sync(w) : EquilibriumState::bipolar(w, t % n);
        const auto theta = eq.reconstruct();
        // 2 pi k and phi* are rounded before they are combined
        double mx = std::fabs(eq.phi_star());
        for (auto x : w) mx = std::max(mx, 2 * std::numbers::pi * (std::fabs(static_cast<double>(x)) + 1));
        ASSERT_LE(std::fabs(exact_mean(theta)), static_cast<double>(n) * std::numeric_limits<double>::epsilon() * mx);
        const auto g = kuramoto_gradient(theta, NaturalFrequencies::zero(n), 1.0);
        for (double x : g) ASSERT_LE(std::fabs(x), 1e-12);
    }
}

TEST(Classify, A1Example) {
    const auto c = classify_initial(PhaseConfig({-0.2, -0.1, 0.3}), 1.0);
    EXPECT_EQ(c.kind, InitialClassKind::A1);
    EXPECT_FALSE(c.bipolar_index.has_value());
    ASSERT_TRUE(c.limit.has_value());
    EXPECT_EQ(c.limit->kind(), EquilibriumKind::Sync);
    EXPECT_LT(c.witness.grad_norm, 1e-10);
}

TEST(Classify, A2Example) {
    const double d = 0.01;
    const auto init = kdgf::testing::centered({-kPi / 3 - d, -kPi / 3 + d, 2 * kPi / 3});
    const auto c = classify_initial(PhaseConfig(init), 1.0);
    EXPECT_EQ(c.kind, InitialClassKind::A2);
    ASSERT_TRUE(c.bipolar_index.has_value());
    EXPECT_EQ(*c.bipolar_index, 2u);  // third oscillator, 0-based
    ASSERT_TRUE(c.limit.has_value());
    EXPECT_EQ(c.limit->kind(), EquilibriumKind::Bipolar);
    EXPECT_LT(c.witness.residual, 1e-5);
}

TEST(Classify, Degenerate) {
    EXPECT_EQ(classify_initial(PhaseConfig({-0.5, -0.5, 1.0}), 1.0).kind, InitialClassKind::Degenerate);
    EXPECT_EQ(classify_initial(PhaseConfig({0.0, 2 * kPi / 3, -2 * kPi / 3}), 1.0).kind,
              InitialClassKind::Degenerate);
}

TEST(Classify, Errors) {
    EXPECT_THROW(classify_initial(PhaseConfig({0.1, 0.2, 0.3}), 1.0), InvalidInput);
    EXPECT_THROW(classify_initial(PhaseConfig({-0.1, 0.1}), 0.0), InvalidInput);
    ClassifyOptions tiny;
    tiny.t_max = 0.5;
    try {
        classify_initial(PhaseConfig({-1.0, 0.2, 0.8}), 1.0, tiny);
        FAIL() << "expected unresolved classification";
    } catch (const UnresolvedClassification& e) {
        EXPECT_GT(e.last_grad_norm(), 1e-10);
    }
}

// Windings: an oscillator that starts a full turn away still synchronizes, keeping k = 1.
TEST(Classify, KeepsWindings) {
    const auto init = kdgf::testing::centered({-0.2, 0.1, 0.15 + 2 * kPi});
    const auto c = classify_initial(PhaseConfig(init), 1.0);
    ASSERT_EQ(c.kind, InitialClassKind::A1);
    const auto& w = c.limit->windings();
    EXPECT_EQ(w[2] - w[0], 1);
    EXPECT_EQ(w[1], w[0]);
}

TEST(EffectivePhases, Examples) {
    const auto s = EquilibriumState::sync({0, 1, -1});
    for (double x : effective_phases(s.reconstruct(), s)) EXPECT_NEAR(x, 0.0, 1e-15);

    const std::size_t N = 3;
    const auto b = EquilibriumState::bipolar({0, 0, 0}, 2);
    const auto eff = effective_phases(b.reconstruct(), b);
    EXPECT_NEAR(eff[0], -kPi / N, 1e-15);
    EXPECT_NEAR(eff[1], -kPi / N, 1e-15);
    EXPECT_NEAR(eff[2], (N - 1) * kPi / N, 1e-15);

    // perturbation of the sync limit, mean-adjusted, comes back unchanged
    auto theta = s.reconstruct();
    const std::vector<double> pert = kdgf::testing::centered({0.01, 0.0, 0.0});
    for (std::size_t i = 0; i < 3; ++i) theta[i] += pert[i];
    const auto e = effective_phases(theta, s);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(e[i], pert[i], 1e-14);
    EXPECT_THROW(effective_phases(std::vector<double>{0.0, 1.0}, s), InvalidInput);
}

TEST(MatchEquilibrium, Examples) {
    const auto a = match_equilibrium(PhaseConfig({0.0, 0.0, 0.0}), 1e-9);
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(a->kind(), EquilibriumKind::Sync);
    EXPECT_EQ(a->windings(), (std::vector<std::int64_t>{0, 0, 0}));
    EXPECT_EQ(a->phi_star(), 0.0);

    const auto b = match_equilibrium(PhaseConfig({-kPi / 3, -kPi / 3, 2 * kPi / 3}), 1e-9);
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(b->kind(), EquilibriumKind::Bipolar);
    EXPECT_EQ(b->bipolar_index(), 2u);
    EXPECT_EQ(b->windings(), (std::vector<std::int64_t>{0, 0, 0}));
    EXPECT_NEAR(b->phi_star(), -kPi / 3, 1e-15);
}

TEST(MatchEquilibrium, UnconvergedAndSaddleTies) {
    EXPECT_FALSE(match_equilibrium(PhaseConfig({-0.5, 0.0, 0.5}), 1e-6).has_value());
    // two-against-two antipodal split: neither a sync nor a one-antipode state
    EXPECT_FALSE(match_equilibrium(PhaseConfig({-kPi / 2, -kPi / 2, kPi / 2, kPi / 2}), 1e-6).has_value());
}

TEST(MatchEquilibrium, AgreesWithClassifierWindings) {
    const auto init = kdgf::testing::centered({-0.3, 0.2, 0.25 + 2 * kPi, -0.1 - 2 * kPi});
    const auto cls = classify_initial(PhaseConfig(init), 1.0);
    ASSERT_EQ(cls.kind, InitialClassKind::A1);
    SimParams sp;
    sp.coupling = 1.0;
    sp.step_size = 0.01;
    const auto traj = simulate(PhaseConfig(init), NaturalFrequencies::zero(4), sp);
    const auto eq = match_equilibrium(traj.final_config(), 1e-8);
    ASSERT_TRUE(eq.has_value());
    EXPECT_EQ(eq->kind(), EquilibriumKind::Sync);
    EXPECT_EQ(eq->windings(), cls.limit->windings());
}

TEST(MatchEquilibrium, PropertyRecoversPerturbedStates) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> k(-2, 2);
    std::uniform_real_distribution<double> noise(-1e-9, 1e-9);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 3 + t % 5;
        std::vector<std::int64_t> w(n);
        for (auto& x : w) x = k(rng);
        const auto eq = (t % 3 == 0) ? EquilibriumState::bipolar(w, t % n) : EquilibriumState::sync(w);
        auto theta = eq.reconstruct();
        for (double& x : theta) x += noise(rng);
        const auto m = match_equilibrium(PhaseConfig(theta), 1e-6);
        ASSERT_TRUE(m.has_value()) << t;
        ASSERT_EQ(m->kind(), eq.kind());
        ASSERT_EQ(m->bipolar_index(), eq.bipolar_index());
        // windings are defined up to a common shift absorbed by phi_star
        const auto r1 = m->reconstruct();
        const auto r2 = eq.reconstruct();
        ASSERT_LT(kdgf::testing::sup_dist(r1, r2), 1e-12);
    }
}
