#include "fixtures.hpp"
#include "toricq/chambers.hpp"

#include <gtest/gtest.h>

using namespace toricq;

namespace {

VarietyPtr threefold() { return ToricVariety::create(fixtures::threefold(), "threefold"); }
ToricDivisor on(const VarietyPtr& X, std::vector<std::int64_t> a) { return ToricDivisor::from_ints(X, a); }
ToricDivisor L_of(const VarietyPtr& X) { return on(X, {3, 3, -1, -1, -1, -1}); }
ToricDivisor H_of(const VarietyPtr& X) { return on(X, {1, 1, 1, 1, 1, 1}); }

ErrorKind kind_of_scan(const ToricDivisor& D, int q, const ToricDivisor& H, const ScanParams& p) {
  try {
    decide_qample(D, q, H, QAmpleMode::Scan, p);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalConsistency;
}

}  // namespace

TEST(Classify, ProjectiveLine) {
  auto P1 = ToricVariety::create(fixtures::p1());
  auto f = classify_cones(on(P1, {1, 0}));
  EXPECT_TRUE(f.nef && f.ample && f.effective && f.big && f.pseudoeffective);
  f = classify_cones(ToricDivisor::zero(P1));
  EXPECT_TRUE(f.nef && f.effective && f.pseudoeffective);
  EXPECT_FALSE(f.ample || f.big);
  f = classify_cones(on(P1, {-1, 0}));
  EXPECT_FALSE(f.nef || f.effective || f.pseudoeffective || f.big);
}

TEST(Classify, ProductOfLines) {
  auto X = ToricVariety::create(fixtures::p1xp1());
  auto f = classify_cones(on(X, {1, 0, 0, 0}));
  EXPECT_TRUE(f.nef && f.effective && f.pseudoeffective);
  EXPECT_FALSE(f.ample || f.big);
  f = classify_cones(on(X, {1, 0, 0, -1}));
  EXPECT_FALSE(f.nef || f.pseudoeffective);
  ASSERT_TRUE(f.non_nef_wall.has_value());
}

TEST(Classify, Threefold) {
  auto X = threefold();
  auto f = classify_cones(L_of(X));
  EXPECT_FALSE(f.nef || f.ample || f.effective || f.big || f.pseudoeffective);
  f = classify_cones(H_of(X));
  EXPECT_TRUE(f.ample && f.big);
  EXPECT_EQ(default_ample(X), H_of(X));
  // F1 is effective but rigid, F1 + F2 moves in a pencil
  f = classify_cones(ToricDivisor::prime(X, 0));
  EXPECT_TRUE(f.effective && f.pseudoeffective);
  EXPECT_FALSE(f.big || f.nef);
}

TEST(Classify, ConeInclusionsOnRandomDivisors) {
  std::mt19937 rng(17);
  for (const auto& [name, f] : fixtures::all()) {
    auto X = ToricVariety::create(f, name);
    for (int t = 0; t < 60; ++t) {
      auto D = on(X, fixtures::random_coeffs(rng, f.rays.size(), -3, 3));
      auto c = classify_cones(D);
      ASSERT_TRUE(!c.ample || c.nef);
      ASSERT_TRUE(!c.ample || c.big);
      ASSERT_TRUE(!c.nef || c.pseudoeffective);
      ASSERT_TRUE(!c.big || c.pseudoeffective);
      ASSERT_TRUE(!c.effective || c.pseudoeffective);
      ASSERT_EQ(c.effective, cohomology_dims(D).dims[0] > 0) << name;
      ASSERT_EQ(c.ample, classify_cones(D * Rational(3)).ample);
      ASSERT_EQ(c.big, classify_cones(D * Rational(2)).big);
    }
  }
}

TEST(BaseLocus, ProjectiveLine) {
  auto P1 = ToricVariety::create(fixtures::p1());
  EXPECT_TRUE(base_locus(on(P1, {1, 0})).empty());
  EXPECT_TRUE(base_locus(on(P1, {-1, 0})).whole());
  EXPECT_TRUE(base_locus(on(P1, {-1, 0})).no_sections);
  EXPECT_TRUE(augmented_base_locus(on(P1, {1, 0}), on(P1, {1, 0})).empty());
  EXPECT_TRUE(augmented_base_locus(ToricDivisor::zero(P1), on(P1, {1, 0})).whole());
}

TEST(BaseLocus, ProductOfLines) {
  auto X = ToricVariety::create(fixtures::p1xp1());
  auto H = on(X, {1, 1, 0, 0});
  auto A = on(X, {1, 0, 0, 0});
  EXPECT_TRUE(base_locus(A).empty());
  EXPECT_TRUE(stable_base_locus(A).empty());
  EXPECT_TRUE(augmented_base_locus(A, H).whole());
  EXPECT_TRUE(augmented_base_locus(H, H).empty());
}

TEST(BaseLocus, ThreefoldExamples) {
  auto X = threefold();
  auto H = H_of(X);
  auto Bp = augmented_base_locus(on(X, {2, 1, 1, 1, 1, 1}) - ToricDivisor::prime(X, 0), H);
  EXPECT_TRUE(Bp.empty());
  ASSERT_TRUE(Bp.multiple.has_value());
  EXPECT_EQ(*Bp.multiple, 2);
  auto F1 = ToricDivisor::prime(X, 0);
  auto b = base_locus(F1);
  EXPECT_EQ(b.components, (std::vector<Cone>{{0}}));
  EXPECT_EQ(b.dimension, 2);
  EXPECT_EQ(augmented_base_locus(L_of(X), H).dimension, 3);
}

TEST(BaseLocus, ChainOfInclusions) {
  std::mt19937 rng(23);
  for (const auto& [name, f] : fixtures::all()) {
    auto X = ToricVariety::create(f, name);
    auto H = default_ample(X);
    for (int t = 0; t < 25; ++t) {
      auto D = on(X, fixtures::random_coeffs(rng, f.rays.size(), -2, 3));
      auto bs = base_locus(D), sb = stable_base_locus(D), bp = augmented_base_locus(D, H);
      for (const auto& tau : X->cones()) {
        if (sb.contains(tau)) {
          ASSERT_TRUE(bs.contains(tau)) << name;
        }
        if (sb.contains(tau)) {
          ASSERT_TRUE(bp.contains(tau)) << name;
        }
      }
      ASSERT_EQ(bp.empty(), classify_cones(D).ample) << name;
      ASSERT_EQ(bp.whole(), !classify_cones(D).big) << name;
    }
  }
}

TEST(BaseLocus, AugmentedIndependentOfAmpleChoice) {
  auto X = threefold();
  auto H1 = H_of(X);
  auto H2 = on(X, {2, 1, 2, 1, 1, 2});
  ASSERT_TRUE(classify_cones(H2).ample);
  std::mt19937 rng(29);
  for (int t = 0; t < 40; ++t) {
    auto D = on(X, fixtures::random_coeffs(rng, 6, -2, 3));
    ASSERT_EQ(augmented_base_locus(D, H1).components, augmented_base_locus(D, H2).components);
  }
}

TEST(QNef, Threefold) {
  auto X = threefold();
  EXPECT_FALSE(is_qnef(L_of(X), 0).qnef);
  auto r = is_qnef(L_of(X), 1);
  EXPECT_TRUE(r.qnef);
  EXPECT_EQ(r.checks.size(), 6u);
  for (const auto& c : r.checks) EXPECT_FALSE(c.negative_big);
  EXPECT_TRUE(is_qnef(L_of(X), 2).qnef);
  auto m = is_qnef(-H_of(X), 2);
  EXPECT_FALSE(m.qnef);
  ASSERT_TRUE(m.witness.has_value());
  EXPECT_TRUE(m.witness->empty());
}

TEST(QNef, NefIsZeroNef) {
  auto X = threefold();
  EXPECT_TRUE(is_qnef(H_of(X), 0).qnef);
  EXPECT_TRUE(is_qnef(ToricDivisor::zero(X), 0).qnef);
}

TEST(QAmple, Examples) {
  auto X = threefold();
  auto H = H_of(X);
  EXPECT_TRUE(decide_qample(H, 0, H).qample);
  auto v = decide_qample(L_of(X), 1, H);
  EXPECT_FALSE(v.qample);
  ASSERT_EQ(v.asymptotic.obstructions.size(), 1u);
  EXPECT_EQ(v.asymptotic.obstructions[0].degree, 2);
  EXPECT_EQ(v.asymptotic.obstructions[0].subset, (RaySet{2, 3, 4, 5}));
  EXPECT_EQ(v.asymptotic.obstructions[0].reduced_dim, 1);
  EXPECT_TRUE(decide_qample(L_of(X), 2, H).qample);
  EXPECT_FALSE(decide_qample(-H, 2, H).qample);
  EXPECT_TRUE(decide_qample(-H, 3, H).qample);
  EXPECT_EQ(smallest_qample(H, H), 0);
  EXPECT_EQ(smallest_qample(L_of(X), H), 2);
  EXPECT_EQ(smallest_qample(-H, H), 3);
}

TEST(QAmple, ObstructionWeightsLieInRegions) {
  auto X = threefold();
  auto H = H_of(X);
  auto v = decide_qample_asymptotic(L_of(X), 1, H, false);
  for (const auto& o : v.obstructions) {
    auto D = L_of(X) - H * o.eps;
    EXPECT_GT(o.eps, 0);
    EXPECT_TRUE(weight_region(D, mask_of(o.subset)).contains(o.weight));
    EXPECT_TRUE(weight_region(L_of(X), mask_of(o.subset)).closure().contains(o.closure_weight));
  }
}

TEST(QAmple, InvariantsOnRandomDivisors) {
  std::mt19937 rng(31);
  for (const auto& [name, f] : fixtures::all()) {
    auto X = ToricVariety::create(f, name);
    const int n = f.lattice_rank;
    auto H = default_ample(X);
    for (int t = 0; t < 40; ++t) {
      auto D = on(X, fixtures::random_coeffs(rng, f.rays.size(), -4, 4));
      std::vector<bool> qa;
      for (int q = 0; q <= n; ++q) qa.push_back(decide_qample_asymptotic(D, q, H, false).qample);
      ASSERT_TRUE(qa[static_cast<std::size_t>(n)]);
      for (int q = 0; q < n; ++q) {
        if (qa[static_cast<std::size_t>(q)]) {
          ASSERT_TRUE(qa[static_cast<std::size_t>(q + 1)]) << name;
        }
        if (qa[static_cast<std::size_t>(q)]) {
          ASSERT_TRUE(is_qnef(D, q).qnef) << name;
        }
      }
      ASSERT_EQ(qa[0], classify_cones(D).ample) << name;
      ASSERT_EQ(qa[static_cast<std::size_t>(n - 1)], !classify_cones(-D).pseudoeffective) << name;
      auto bp = augmented_base_locus(D, H);
      for (int q = 0; q < n; ++q)
        if (bp.dimension <= q) {
          ASSERT_TRUE(qa[static_cast<std::size_t>(q)]) << name;
        }
      auto D3 = D * Rational(3);
      for (int q = 0; q < n; ++q)
        ASSERT_EQ(decide_qample_asymptotic(D3, q, H, false).qample, qa[static_cast<std::size_t>(q)]) << name;
      auto H2 = H * Rational(2) + default_ample(X);
      for (int q = 0; q < n; ++q)
        ASSERT_EQ(decide_qample_asymptotic(D, q, H2, false).qample, qa[static_cast<std::size_t>(q)]) << name;
    }
  }
}

TEST(QAmple, BoundaryClassIsNotTopAmple) {
  // -D = F1 is pseudoeffective but not big, so D = -F1 is not 1-ample.
  auto X = ToricVariety::create(fixtures::p1xp1());
  auto H = on(X, {1, 1, 0, 0});
  auto D = on(X, {-1, 0, 0, 0});
  EXPECT_FALSE(classify_cones(-D).big);
  EXPECT_FALSE(decide_qample(D, 1, H).qample);
}

TEST(ModeAgreement, Threefold) {
  auto X = threefold();
  auto H = H_of(X);
  ScanParams p;
  p.n_max = 6;
  p.j_max = 3;
  for (const auto& D : {L_of(X), H, -H, ToricDivisor::prime(X, 0) + ToricDivisor::prime(X, 1)}) {
    for (int q = 0; q < 3; ++q) {
      auto st = scan_tables(D, H, p, q + 1);
      auto a = check_mode_agreement(D, q, H, st);
      ASSERT_TRUE(a.agree) << a.detail;
      EXPECT_EQ(a.scan.obstruction, !a.asymptotic.qample);
    }
  }
  auto d = decide_qample(L_of(X), 1, H, QAmpleMode::Scan, p);
  EXPECT_FALSE(d.qample);
  ASSERT_TRUE(d.scan.has_value());
  EXPECT_TRUE(d.scan->obstruction);
}

// Near the boundary of the 1-ample cone the default window N <= 12 still
// sees h^2(12D - 4H) = 1; the vanishing starts at N = 13.
TEST(ModeAgreement, ShortWindowNearBoundary) {
  auto X = threefold();
  auto H = H_of(X);
  auto D = on(X, {2, 4, 4, 1, -2, -2});
  EXPECT_TRUE(decide_qample(D, 1, H).qample);
  auto st = scan_tables(D, H, ScanParams{}, 2);
  auto a = check_mode_agreement(D, 1, H, st);
  EXPECT_TRUE(a.scan.obstruction);
  EXPECT_FALSE(a.agree);
  EXPECT_EQ(kind_of_scan(D, 1, H, ScanParams{}), ErrorKind::ModeDisagreement);
  ScanParams longer;
  longer.n_max = 13;
  auto d = decide_qample(D, 1, H, QAmpleMode::Scan, longer);
  EXPECT_TRUE(d.qample);
  EXPECT_FALSE(d.scan->obstruction);
}

TEST(Connectivity, Threefold) {
  auto X = threefold();
  auto r = disconnected_section_criterion(ToricDivisor::prime(X, 0) + ToricDivisor::prime(X, 1), 1);
  EXPECT_FALSE(r.connected);
  EXPECT_TRUE(r.applies);
  EXPECT_EQ(r.threshold_q, 1);
  EXPECT_TRUE(r.rules_out_target);
  ASSERT_EQ(r.h1_checks.size(), 4u);
  for (const auto& [m, h] : r.h1_checks) EXPECT_EQ(h, 1);
  EXPECT_FALSE(decide_qample(ToricDivisor::prime(X, 0) + ToricDivisor::prime(X, 1), 1, H_of(X)).qample);
  auto c = disconnected_section_criterion(ToricDivisor::prime(X, 0) + ToricDivisor::prime(X, 2), 1);
  EXPECT_TRUE(c.connected);
  EXPECT_FALSE(c.applies);
  EXPECT_THROW(disconnected_section_criterion(L_of(X), 1), Error);
}

TEST(Connectivity, DisconnectedSupportNeverThresholdAmple) {
  for (const auto& [name, f] : fixtures::all()) {
    auto X = ToricVariety::create(f, name);
    if (f.lattice_rank < 2) continue;
    auto H = default_ample(X);
    const int r = X->ray_count();
    for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
      std::vector<std::int64_t> a(static_cast<std::size_t>(r), 0);
      for (int i = 0; i < r; ++i)
        if (mask >> i & 1) a[static_cast<std::size_t>(i)] = 1 + i % 2;
      auto res = disconnected_section_criterion(on(X, a), f.lattice_rank - 2);
      if (res.applies) {
        ASSERT_FALSE(decide_qample_asymptotic(on(X, a), f.lattice_rank - 2, H).qample) << name;
      }
    }
  }
}

TEST(Chambers, ProductOfLines) {
  auto X = ToricVariety::create(fixtures::p1xp1());
  ChamberSpec spec{ToricDivisor::zero(X), on(X, {1, 0, 0, 0}), on(X, {0, 1, 0, 0}), -1, 1, -1, 1, 2, {{Rational(1, 2), 1}}};
  auto m = chamber_scan(spec, on(X, {1, 1, 0, 0}));
  ASSERT_EQ(m.grid.size(), 9u);
  auto at = [&](int i, int j) { return m.grid[static_cast<std::size_t>(j * 3 + i)]; };
  EXPECT_EQ(at(2, 2).smallest_q, 0);
  EXPECT_EQ(at(0, 0).smallest_q, 2);
  EXPECT_EQ(at(1, 1).smallest_q, 2);
  EXPECT_EQ(at(2, 0).smallest_q, 1);
  EXPECT_EQ(at(2, 1).smallest_q, 1);
  EXPECT_FALSE(at(0, 1).pseudoeffective);
  EXPECT_TRUE(at(2, 1).pseudoeffective);
  ASSERT_EQ(m.points.size(), 1u);
  EXPECT_EQ(m.points[0].smallest_q, 0);
  auto svg = chamber_svg(m);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  spec.dir2 = on(X, {2, 0, 0, 0});
  EXPECT_THROW(chamber_scan(spec, on(X, {1, 1, 0, 0})), Error);
}
