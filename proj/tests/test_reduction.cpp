#include <gtest/gtest.h>

#include "contactred/error.hpp"
#include "contactred/reduction.hpp"
#include "contactred/verify.hpp"

using namespace contactred;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Random level-set tangent vector of T*Q at y.
Vec level_tangent(const ReductionScenario& s, const Vec& y, Rng& rng) {
  const Mat basis = level_tangent_basis(s, y, false);
  std::normal_distribution<double> normal;
  Vec c(basis.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = normal(rng);
  return basis * c;
}

}  // namespace

TEST(Scenarios, Registry) {
  const std::vector<std::string> names = scenario_names();
  EXPECT_EQ(names, (std::vector<std::string>{"albert_torus", "linear_momentum", "paral1", "paral2", "paral3"}));
  EXPECT_FALSE(is_scenario("nosuch"));
  EXPECT_THROW(make_scenario("nosuch"), GeometryError);
  EXPECT_THROW(make_scenario("paral1", 1), GeometryError);
  EXPECT_THROW(make_scenario("linear_momentum", 5), GeometryError);
  EXPECT_EQ(make_scenario("paral3", 5).n, 1);
  EXPECT_EQ(make_scenario("paral1").n, 3);
  EXPECT_EQ(make_scenario("albert_torus").n, 2);
}

TEST(Reduction, KernelAlgebraOracles) {
  const GroupActionSpec r3 = GroupActionSpec::translations(Mat::Identity(3, 3));
  const KernelAlgebra k = kernel_algebra(r3, vec({0, 0, 1}));
  ASSERT_EQ(k.basis.cols(), 2);
  EXPECT_NEAR((k.basis - Mat::Identity(3, 2)).norm(), 0.0, 1e-15);
  EXPECT_TRUE(k.condition);
  EXPECT_THROW(kernel_algebra(r3, vec({0, 0, 0})), GeometryError);
  EXPECT_THROW(kernel_algebra(r3, vec({0, 1})), GeometryError);

  for (int n : {2, 3, 5}) {
    const ReductionScenario s = make_scenario("albert_torus", n);
    const KernelAlgebra ka = kernel_algebra(s.action, s.mu);
    ASSERT_EQ(ka.basis.cols(), n - 1);
    EXPECT_LE(max_principal_angle(ka.basis, Mat::Identity(n, n - 1)), 1e-12);
    EXPECT_TRUE(ka.condition);
  }

  const ReductionScenario lm = make_scenario("linear_momentum", 1);
  const KernelAlgebra kl = kernel_algebra(lm.action, lm.mu);
  ASSERT_EQ(kl.basis.cols(), 2);
  EXPECT_LE((kl.basis.transpose() * vec({1, 2, 2})).norm(), 1e-14);
  EXPECT_TRUE(kl.condition);
}

TEST(Reduction, AlbertLevelSetOracle) {
  const ReductionScenario s = make_scenario("albert_torus", 3);
  Rng rng(1);
  for (const CospherePoint& pt : sample_level(s, 16, rng)) {
    const Vec x = pt.rep.base.coords;
    Vec expected = Vec::Zero(6);
    expected.segment(4, 2) = vec({-x[5], x[4]});
    EXPECT_NEAR((pt.rep.p - expected).norm(), 0.0, 1e-12);
    EXPECT_LE(level_residual(s, pt), 1e-10);
  }
}

TEST(Reduction, LevelSets) {
  Rng rng(2);
  const ReductionScenario p1 = make_scenario("paral1", 3);
  for (const CospherePoint& pt : sample_level(p1, 16, rng)) {
    EXPECT_LE(std::abs(J_ct(p1.action, pt.rep, vec({1}))), 1e-10);
    EXPECT_NEAR(pt.rep.p.norm(), 1.0, 1e-14);
  }
  const ReductionScenario lm = make_scenario("linear_momentum", 2);
  for (const CospherePoint& pt : sample_level(lm, 16, rng)) {
    const Vec j = J_ct(lm.action, pt.rep);
    const double t = j.dot(lm.mu) / lm.mu.squaredNorm();
    EXPECT_GT(t, 1e-8);
    EXPECT_LE((j - t * lm.mu).norm(), 1e-10);
  }
}

TEST(Reduction, Phi0Oracles) {
  Rng rng(3);
  const ReductionScenario p1 = make_scenario("paral1", 3);
  for (const CospherePoint& pt : sample_level(p1, 8, rng)) {
    const Vec img = phi0_reduced(p1, pt).coords();
    Vec expected(8);
    expected << pt.rep.base.coords.tail(4), pt.rep.p.tail(4);
    EXPECT_NEAR((img - expected).norm(), 0.0, 1e-12);
  }
  const ReductionScenario p2 = make_scenario("paral2", 2);
  for (const CospherePoint& pt : sample_level(p2, 8, rng)) {
    const Vec x = pt.rep.base.coords;
    const Vec p = pt.rep.p;
    const Vec expected = vec({std::cos(x[0]), std::sin(x[0]), std::cos(x[1]), std::sin(x[1]), -p[0] * std::sin(x[0]),
                              p[0] * std::cos(x[0]), -p[1] * std::sin(x[1]), p[1] * std::cos(x[1])});
    EXPECT_NEAR((phi0_reduced(p2, pt).coords() - expected).norm(), 0.0, 1e-12);
  }
}

TEST(Reduction, PsiOracleOnAlbertTorus) {
  const ReductionScenario s = make_scenario("albert_torus", 2);
  Rng rng(4);
  const std::vector<CospherePoint> pts = sample_level(s, 8, rng);
  for (const CospherePoint& pt : pts) {
    const Vec x = pt.rep.base.coords;
    const Vec expected = vec({x[2], x[3], -x[3], x[2]});
    EXPECT_NEAR((psi_mu_reduced(s, pt).coords() - expected).norm(), 0.0, 1e-12);
    // Any point with the same last angle lands on the same image.
    CospherePoint other = pt;
    other.rep.base.coords.head(2) = vec({std::cos(1.234), std::sin(1.234)});
    EXPECT_NEAR((psi_mu_reduced(s, other).coords() - expected).norm(), 0.0, 1e-12);
  }
}

TEST(Reduction, GuardsOnTheWrongLevel) {
  const ReductionScenario al = make_scenario("albert_torus", 2);
  const ReductionScenario p1 = make_scenario("paral1", 3);
  const CospherePoint off = cosphere_point_from_coords(al.q, vec({1, 0, 1, 0, 0, 1, 0, 0}));
  EXPECT_THROW(psi_mu_reduced(al, off), GeometryError);
  EXPECT_THROW(phi0_reduced(al, off), GeometryError);
  const CospherePoint off0 = cosphere_point_from_coords(p1.q, vec({1, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0}));
  EXPECT_THROW(phi0_reduced(p1, off0), GeometryError);
  EXPECT_THROW(psi_mu_reduced(p1, off0), GeometryError);
}

TEST(Reduction, DimensionAuditOracles) {
  struct Case {
    std::string name;
    int n;
    int level;
    int orbit;
    int reduced;
  };
  for (const Case& c : {Case{"paral1", 3, 4, 1, 3}, Case{"paral2", 3, 5, 0, 5}, Case{"paral3", 1, 4, 1, 3},
                        Case{"albert_torus", 2, 2, 1, 1}, Case{"linear_momentum", 1, 9, 2, 7}}) {
    const ReductionScenario s = make_scenario(c.name, c.n);
    Rng rng(5);
    const DimensionAudit d = dimension_audit(s, sample_level(s, 16, rng));
    EXPECT_EQ(d.level_dim, c.level) << c.name;
    EXPECT_EQ(d.orbit_dim, c.orbit) << c.name;
    EXPECT_EQ(d.reduced_dim, c.reduced) << c.name;
    EXPECT_TRUE(d.matches()) << c.name;
  }
}

TEST(ReductionProperty, ContactIdentityAndFactor) {
  for (const std::string& name : scenario_names()) {
    const ReductionScenario s = make_scenario(name);
    const GroupActionSpec group = s.reduction_group();
    Rng rng(51);
    for (const CospherePoint& pt : sample_level(s, 16, rng)) {
      const Vec y = s.sigma.lift(pt.coords());
      const Vec v = level_tangent(s, y, rng);
      const IdentitySample ad = reduction_identity(s, y, v);
      const IdentitySample fd = reduction_identity(s, y, v, Backend::CentralDifference);
      ASSERT_LE(ad.residual(), 1e-8) << name;
      ASSERT_LE(fd.residual(), 1e-6) << name;
      ASSERT_GE(ad.factor, kFactorMargin) << name;
      if (s.unit_factor) {
        ASSERT_LE(std::abs(ad.factor - 1.0), 1e-10) << name;
      }

      // F is constant on rays and on group orbits.
      Vec scaled = y;
      scaled.tail(s.q.ambient_dim()) *= 4.0;
      ASSERT_LE(std::abs(reduction_factor(s, scaled) - ad.factor), 1e-9) << name;
      const Vec moved = group.cotangent_lift<double>(group.sample_element(rng).coords, y);
      ASSERT_LE(std::abs(reduction_factor(s, moved) - ad.factor), 1e-9) << name;
    }
  }
}

TEST(ReductionProperty, ReducedMapIsInvariantAndRoutesAgree) {
  for (const std::string& name : scenario_names()) {
    const ReductionScenario s = make_scenario(name);
    const GroupActionSpec group = s.reduction_group();
    Rng rng(52);
    for (const CospherePoint& pt : sample_level(s, 16, rng)) {
      const CospherePoint img = s.zero_momentum() ? phi0_reduced(s, pt) : psi_mu_reduced(s, pt);
      const CospherePoint moved = cosphere_lift_and_scale(group, group.sample_element(rng), pt, s.sigma).image;
      const CospherePoint img2 = s.zero_momentum() ? phi0_reduced(s, moved) : psi_mu_reduced(s, moved);
      ASSERT_LE((img.coords() - img2.coords()).norm(), 1e-9) << name;
      ASSERT_LE((reduced_point<double>(s, pt.coords()) - img.coords()).norm(), 1e-8) << name;
      ASSERT_LE(constraint_residual(ManifoldSpec::cosphere_bundle(s.quotient), img.coords()), 1e-10) << name;
    }
  }
}

TEST(ReductionProperty, Injectivity) {
  for (const char* name : {"albert_torus", "linear_momentum"}) {
    const ReductionScenario s = make_scenario(name);
    Rng rng(53);
    const InjectivityReport r = injectivity_check(s, 200, rng);
    EXPECT_EQ(r.pairs, 200);
    EXPECT_EQ(r.collisions, 0) << name;
    EXPECT_LE(r.same_class_max_distance, 1e-9) << name;
  }
}

class ScenarioSuite : public ::testing::TestWithParam<std::pair<std::string, int>> {};

TEST_P(ScenarioSuite, EveryCheckPasses) {
  const auto& [name, n] = GetParam();
  const ScenarioReport r = run_scenario(make_scenario(name, n));
  for (const CheckResult& c : r.checks)
    EXPECT_TRUE(c.pass) << name << " n=" << n << " " << c.name << " residual " << c.max_residual << " " << c.error;
  EXPECT_TRUE(r.dimensions.matches());
  EXPECT_TRUE(r.pass());
}

INSTANTIATE_TEST_SUITE_P(Registered, ScenarioSuite,
                         ::testing::Values(std::pair<std::string, int>{"albert_torus", 2},
                                           std::pair<std::string, int>{"albert_torus", 3},
                                           std::pair<std::string, int>{"linear_momentum", 1},
                                           std::pair<std::string, int>{"linear_momentum", 2},
                                           std::pair<std::string, int>{"paral1", 2},
                                           std::pair<std::string, int>{"paral1", 3},
                                           std::pair<std::string, int>{"paral1", 4},
                                           std::pair<std::string, int>{"paral2", 1},
                                           std::pair<std::string, int>{"paral2", 3},
                                           std::pair<std::string, int>{"paral3", 1}),
                         [](const auto& info) { return info.param.first + "_" + std::to_string(info.param.second); });
