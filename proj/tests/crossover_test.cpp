#include "cnotread/crossover.hpp"

#include "cnotread/presets.hpp"
#include "gtest/gtest.h"

using namespace cnotread;

TEST(Crossover, SmallErrors) {
  const auto r = crossover_loss(0.001, 0.001, 0.1);
  ASSERT_EQ(r.status, CrossoverStatus::kFound);
  EXPECT_NEAR(r.p_L, 0.0003, 5e-5);
  EXPECT_LE(r.bracket_width, 1e-6);
  EXPECT_LE(r.iterations, 40);
  EXPECT_NEAR(crossover_gap(presets::crossover(0.001, 0.001, 0.1), 1.0 - r.p_L, 4), 0.0, 1e-7);
}

TEST(Crossover, LargeErrors) {
  const auto r = crossover_loss(0.05, 0.05, 0.1);
  ASSERT_EQ(r.status, CrossoverStatus::kFound);
  EXPECT_NEAR(r.p_L, 0.0152, 5e-4);
}

TEST(Crossover, ErrorFreeSitsOnBoundary) {
  const auto r = crossover_loss(0.0, 0.0, 0.0);
  EXPECT_EQ(r.status, CrossoverStatus::kAtBoundary);
  EXPECT_EQ(r.p_L, 0.0);
}

TEST(Crossover, OutsideBoxRejected) {
  EXPECT_THROW(crossover_loss(0.06, 0.01, 0.1), std::invalid_argument);
  EXPECT_THROW(crossover_loss(0.01, 0.2, 0.1), std::invalid_argument);
  EXPECT_THROW(crossover_loss(0.01, 0.01, 0.11), std::invalid_argument);
  EXPECT_THROW(crossover_loss(-0.01, 0.01, 0.1), std::invalid_argument);
}

TEST(Crossover, SignOfGapAroundRoot) {
  const ErrorParams p = presets::crossover(0.01, 0.01, 0.05);
  const auto r = crossover_loss(0.01, 0.01, 0.05);
  ASSERT_EQ(r.status, CrossoverStatus::kFound);
  // Below the root (more loss) scheme 3 wins; above it scheme 4 wins.
  EXPECT_GT(crossover_gap(p, 1.0 - 2 * r.p_L, 4), 0.0);
  EXPECT_LT(crossover_gap(p, 1.0 - 0.5 * r.p_L, 4), 0.0);
}

TEST(Crossover, GrowsWithGateErrors) {
  const double grid[] = {0.001, 0.01, 0.03, 0.05};
  for (double p_x : {0.001, 0.05}) {
    double last = 0.0;
    for (double p_c : grid) {
      const double v = crossover_loss(p_c, p_x, 0.1).p_L;
      EXPECT_GT(v, last) << p_c << " " << p_x;
      last = v;
    }
  }
  for (double p_c : {0.001, 0.05}) {
    double last = 0.0;
    for (double p_x : {0.001, 0.01, 0.05, 0.1}) {
      const double v = crossover_loss(p_c, p_x, 0.1).p_L;
      EXPECT_GT(v, last) << p_c << " " << p_x;
      last = v;
    }
  }
}

TEST(Crossover, BaseOverloadUsesPreset) {
  const auto a = crossover_loss(0.01, 0.02, 0.05);
  const auto b = crossover_loss(0.01, 0.02, 0.05, presets::fig2());
  EXPECT_EQ(a.p_L, b.p_L);
  EXPECT_EQ(a.p_c, 0.01);
  EXPECT_EQ(a.p_x, 0.02);
  EXPECT_EQ(a.p_D, 0.05);
}
