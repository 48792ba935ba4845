#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "qpgg/ising_map.hpp"

namespace qpgg {
namespace {

using testing::uniform;

GameParams random_params() { return {uniform(0.01, 5.0), uniform(0.01, 10.0), uniform(0.0, 5.0)}; }

TEST(MapToIsing, ClassicalPublicGoods) {
    const auto ising = map_to_ising(classical_matrix(GameParams(1, 4, 0)));
    EXPECT_DOUBLE_EQ(ising.J, 0.0);
    EXPECT_DOUBLE_EQ(ising.h, -0.5);
}

TEST(MapToIsing, PureCoordination) {
    const auto ising = map_to_ising(Bimatrix::symmetric({"s1", "s2"}, {{1, 0}, {0, 1}}));
    EXPECT_DOUBLE_EQ(ising.J, 0.5);
    EXPECT_DOUBLE_EQ(ising.h, 0.0);
}

TEST(MapToIsing, ConstantGame) {
    const auto ising = map_to_ising(Bimatrix::symmetric({"s1", "s2"}, {{3.5, 3.5}, {3.5, 3.5}}));
    EXPECT_EQ(ising.J, 0.0);
    EXPECT_EQ(ising.h, 0.0);
}

TEST(MapToIsing, RejectsAsymmetricAndWrongShape) {
    const Bimatrix asym({"a", "b"}, {"a", "b"}, {{1, 1}, {0, 2}, {0, 0}, {1, 1}});
    EXPECT_THROW(map_to_ising(asym), DomainError);
    EXPECT_THROW(map_to_ising(quantum_matrix(0.3, GameParams(1, 4, 0))), DomainError);
}

TEST(MagnetizationAnalytic, ZeroFieldIsExactlyZero) {
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(magnetization_analytic(IsingParams(uniform(-5, 5), 0.0), Beta(uniform(0.01, 10))), 0.0);
}

TEST(MagnetizationAnalytic, DecoupledChainIsTanh) {
    EXPECT_NEAR(magnetization_analytic(IsingParams(0.0, 1.5), Beta(1.0)), 0.9051482536448664, 1e-15);
}

TEST(MagnetizationAnalytic, FerromagneticValue) {
    // mpmath, 40 digits: 0.98689705348506858538...
    EXPECT_NEAR(magnetization_analytic(IsingParams(1.5, 0.3), Beta(1.0)), 0.9868970534850686, 1e-15);
}

TEST(MagnetizationAnalytic, LargeArgumentsNeverNaN) {
    const double cases[][2] = {{0.0, 400.0}, {0.0, -800.0}, {-200.0, 1e-300}, {300.0, 1e-300},
                               {-150.0, 400.0}, {1.0, 1e6}, {-1e3, 0.5}, {1e3, -0.5}};
    for (const auto& c : cases) {
        const double m = magnetization_analytic(IsingParams(c[0], c[1]), Beta(1.0));
        EXPECT_TRUE(std::isfinite(m)) << c[0] << " " << c[1];
        EXPECT_LE(std::abs(m), 1.0);
        if (m != 0.0) {
            EXPECT_EQ(std::signbit(m), std::signbit(c[1]));
        }
    }
    EXPECT_EQ(magnetization_analytic(IsingParams(0.0, 400.0), Beta(1.0)), 1.0);
    EXPECT_EQ(magnetization_analytic(IsingParams(0.0, -800.0), Beta(1.0)), -1.0);
}

// The overflow-free branch must join the direct formula continuously.
TEST(MagnetizationAnalytic, ContinuousAcrossLargeFieldThreshold) {
    for (double k : {-100.0, -170.0, -174.0}) {
        const double below = magnetization_analytic(IsingParams(k, large_field_threshold), Beta(1.0));
        const double above = magnetization_analytic(IsingParams(k, std::nextafter(large_field_threshold, 400.0)),
                                                    Beta(1.0));
        EXPECT_NEAR(below, above, 1e-12) << k;
    }
}

TEST(MagnetizationAnalytic, SignFollowsField) {
    for (int i = 0; i < 200; ++i) {
        const double h = uniform(-3, 3);
        const double m = magnetization_analytic(IsingParams(uniform(-2, 2), h), Beta(uniform(0.1, 5)));
        EXPECT_EQ(m > 0, h > 0);
        EXPECT_LE(std::abs(m), 1.0);
    }
}

TEST(Beta, RejectsNonPositive) {
    EXPECT_THROW(Beta(0.0), DomainError);
    EXPECT_THROW(Beta(-1.0), DomainError);
    EXPECT_THROW(Beta(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(Subgame, QuantumVsFreeRideTransitionPoint) {
    const auto s = subgame(SubgameKind::quantum_vs_freeride, pi / 6, GameParams(1, 4, 0));
    EXPECT_NEAR(s.ising.h, 0.0, 1e-15);
    EXPECT_EQ(s.ising.J, 0.0);
    EXPECT_THROW(mean_field_N(s.ising, Beta(1.0), 1e-6), DegenerateRegimeError);
}

TEST(Subgame, QuantumVsFreeRideClassicalLimit) {
    const auto s = subgame(SubgameKind::quantum_vs_freeride, 0.0, GameParams(1, 4, 0));
    EXPECT_DOUBLE_EQ(s.ising.h, -0.5);
    EXPECT_NEAR(magnetization_analytic(s.ising, Beta(1.0)), std::tanh(-0.5), 1e-15);
    EXPECT_EQ(s.game.row_labels()[0], "Q");
    EXPECT_EQ(s.game.row_labels()[1], "free ride");
}

TEST(Subgame, QuantumVsProvideHasZeroField) {
    for (int i = 0; i < 100; ++i) {
        const auto s = subgame(SubgameKind::quantum_vs_provide, uniform(0, half_pi), random_params());
        EXPECT_EQ(s.ising.h, 0.0);
    }
}

TEST(Subgame, ClosedFormsMatchMapping) {
    for (int i = 0; i < 200; ++i) {
        const double gamma = uniform(0, half_pi);
        const auto g = random_params();
        const auto qvp = subgame(SubgameKind::quantum_vs_provide, gamma, g);
        const auto mapped_qvp = map_to_ising(qvp.game);
        EXPECT_NEAR(mapped_qvp.J, qvp.ising.J, 1e-12);
        EXPECT_EQ(mapped_qvp.h, 0.0);
        EXPECT_EQ(qvp.ising.h, 0.0);
        const auto qvf = subgame(SubgameKind::quantum_vs_freeride, gamma, g);
        EXPECT_EQ(qvf.ising.J, 0.0);
        const auto mapped_qvf = map_to_ising(qvf.game);
        EXPECT_NEAR(mapped_qvf.J, 0.0, 1e-12);
        EXPECT_NEAR(mapped_qvf.h, qvf.ising.h, 1e-12);
    }
}

TEST(MagnetizationQvf, ClassicalLimitFormula) {
    for (int i = 0; i < 100; ++i) {
        const auto g = random_params();
        const double beta = uniform(0.01, 10);
        const double expected = std::tanh(beta * ((g.reward() + g.punishment()) / 2 - g.cost() / 4));
        EXPECT_NEAR(magnetization_qvf(0.0, g, Beta(beta)), expected, 1e-12);
    }
}

TEST(MagnetizationQvf, MaximalEntanglementValue) {
    EXPECT_NEAR(magnetization_qvf(half_pi, GameParams(1, 4, 0), Beta(1.0)), 0.9051482536448664, 1e-15);
}

TEST(MagnetizationQvf, VanishesAtTransition) {
    for (double beta : {0.5, 1.0, 2.0, 5.0})
        EXPECT_NEAR(magnetization_qvf(pi / 6, GameParams(1, 4, 0), Beta(beta)), 0.0, 1e-15);
}

TEST(MagnetizationQvf, AgreesWithAnalyticOnSubgame) {
    for (int i = 0; i < 200; ++i) {
        const double gamma = uniform(0, half_pi);
        const auto g = random_params();
        const Beta beta(uniform(0.01, 10));
        const auto s = subgame(SubgameKind::quantum_vs_freeride, gamma, g);
        EXPECT_NEAR(magnetization_qvf(gamma, g, beta), magnetization_analytic(s.ising, beta), 1e-12);
    }
}

TEST(MagnetizationQvf, SignRuleAndPositivity) {
    for (int i = 0; i < 500; ++i) {
        const double gamma = uniform(0, half_pi);
        const auto g = random_params();
        const Beta beta(uniform(0.01, 10));
        const double drive = g.reward() - g.cost() / 2 * std::cos(2 * gamma) + g.punishment() * std::pow(std::cos(gamma), 2);
        const double m = magnetization_qvf(gamma, g, beta);
        if (std::abs(drive) > 1e-12) {
            EXPECT_EQ(m > 0, drive > 0);
        }
        EXPECT_GT(magnetization_qvf(half_pi, g, beta), 0.0);
    }
}

TEST(MagnetizationQvf, MonotoneInBetaAndUnbiasedAtHighTemperature) {
    for (int i = 0; i < 50; ++i) {
        const double gamma = uniform(0, half_pi);
        const auto g = random_params();
        double last = 0.0;
        for (double beta = 1e-3; beta < 10; beta *= 1.3) {
            const double m = std::abs(magnetization_qvf(gamma, g, Beta(beta)));
            EXPECT_GE(m, last);
            last = m;
        }
        EXPECT_LT(std::abs(magnetization_qvf(gamma, g, Beta(1e-9))), 1e-8);
    }
}

TEST(MagnetizationQvf, PunishmentAboveThresholdKeepsMajorityQuantum) {
    for (int i = 0; i < 200; ++i) {
        const double r = uniform(0.01, 5), c = uniform(0.01, 10);
        const double p = std::max(0.0, (c - 2 * r) / 2) + uniform(1e-3, 3);
        for (int k = 0; k <= 50; ++k)
            EXPECT_GT(magnetization_qvf(half_pi * k / 50, GameParams(r, c, p), Beta(1.0)), 0.0);
    }
}

TEST(PhaseTransition, ReferenceGame) {
    const auto g = phase_transition_gamma(GameParams(1, 4, 0));
    ASSERT_TRUE(g.has_value());
    EXPECT_NEAR(*g, 0.5235987755982988, 1e-12);
}

TEST(PhaseTransition, BoundaryAtUnitRatio) {
    const auto g = phase_transition_gamma(GameParams(1, 4, 1));
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(*g, 0.0);
}

TEST(PhaseTransition, NoneWhenRatioAboveOne) {
    EXPECT_FALSE(phase_transition_gamma(GameParams(1, 1, 0)).has_value());
    for (int k = 0; k <= 100; ++k)
        EXPECT_GT(magnetization_qvf(half_pi * k / 100, GameParams(1, 1, 0), Beta(1.0)), 0.0);
    EXPECT_FALSE(phase_transition_gamma(GameParams(1, 2, 3)).has_value());
}

TEST(PhaseTransition, DegenerateDenominator) { EXPECT_THROW(phase_transition_gamma(GameParams(1, 2, 2)), DomainError); }

TEST(PhaseTransition, RootOfMagnetization) {
    int found = 0;
    for (int i = 0; i < 500; ++i) {
        const auto g = random_params();
        if (g.punishment() == g.cost())
            continue;
        const auto root = phase_transition_gamma(g);
        if (!root)
            continue;
        ++found;
        EXPECT_NEAR(magnetization_qvf(*root, g, Beta(uniform(0.1, 10))), 0.0, 1e-12);
        const double bis = testing::bisect([&](double x) { return qvf_field(x, g); }, 0.0, half_pi, 1e-12);
        if (*root > 1e-6) {
            EXPECT_NEAR(*root, bis, 1e-9);
        }
    }
    EXPECT_GT(found, 10);
}

TEST(MeanFieldN, ReferenceCase) {
    // mpmath: 22.705578721464336...
    EXPECT_NEAR(mean_field_N(IsingParams(1.5, 0.3), Beta(1.0), 1e-6), 22.705578721464336, 1e-10);
    EXPECT_NEAR(mean_field_N(IsingParams(1.5, 0.3), Beta(1.0), 1e-12), 45.41115744292867, 1e-10);
    // Same products beta*J, beta*h.
    EXPECT_NEAR(mean_field_N(IsingParams(0.75, 0.15), Beta(2.0), 1e-6), 22.705578721464336, 1e-10);
}

TEST(MeanFieldN, ShrinksToZeroAsAlphaApproachesOne) {
    EXPECT_NEAR(mean_field_N(IsingParams(1.5, 0.3), Beta(1.0), 0.5), 1.1391767106784321, 1e-12);
    EXPECT_LT(mean_field_N(IsingParams(1.5, 0.3), Beta(1.0), 1 - 1e-12), 1e-10);
}

TEST(MeanFieldN, DegenerateAtZeroCoupling) {
    EXPECT_THROW(mean_field_N(IsingParams(0.0, 0.3), Beta(1.0), 1e-6), DegenerateRegimeError);
    // Payoffs of the classical game (r=1, c=4, p=0) map to J = 0.
    EXPECT_THROW(mean_field_N(map_to_ising(classical_matrix(GameParams(1, 4, 0))), Beta(1.0), 1e-6),
                 DegenerateRegimeError);
}

TEST(MeanFieldN, AntiferromagneticUsesMagnitude) {
    const double n = mean_field_N(IsingParams(-0.5, 0.2), Beta(1.0), 1e-6);
    EXPECT_TRUE(std::isfinite(n));
    EXPECT_GT(n, 0.0);
}

TEST(MeanFieldN, HugeFieldStaysFinite) {
    const double n = mean_field_N(IsingParams(1.0, 500.0), Beta(1.0), 1e-6);
    EXPECT_TRUE(std::isfinite(n));
    EXPECT_GT(n, 0.0);
    EXPECT_LT(n, 1.0);
}

TEST(MeanFieldN, RejectsAlphaOutsideUnitInterval) {
    EXPECT_THROW(mean_field_N(IsingParams(1, 0), Beta(1), 0.0), DomainError);
    EXPECT_THROW(mean_field_N(IsingParams(1, 0), Beta(1), 1.0), DomainError);
}

} // namespace
} // namespace qpgg
