#include <gtest/gtest.h>

#include "contactred/actions.hpp"
#include "contactred/error.hpp"
#include "contactred/reduction.hpp"

using namespace contactred;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

std::vector<ReductionScenario> scenarios() {
  std::vector<ReductionScenario> out;
  for (const std::string& name : scenario_names()) out.push_back(make_scenario(name));
  return out;
}

CospherePoint random_cosphere(const ManifoldSpec& q, Rng& rng) {
  return cosphere_point_from_coords(q, sample_point(ManifoldSpec::cosphere_bundle(q), rng).coords);
}

Vec random_algebra(int k, Rng& rng) {
  std::normal_distribution<double> normal;
  Vec xi(k);
  for (int i = 0; i < k; ++i) xi[i] = normal(rng);
  return xi;
}

}  // namespace

TEST(Actions, FundamentalFieldOracles) {
  const GroupActionSpec hopf = GroupActionSpec::circle_on_s3();
  EXPECT_NEAR((fundamental_field(hopf, vec({1}), vec({1, 0, 0, 0})) - vec({0, 1, 0, 0})).norm(), 0.0, 1e-15);

  const double th = 0.7;
  const GroupActionSpec first = GroupActionSpec::torus_rotation(4, {0});
  const Vec x = vec({std::cos(th), std::sin(th), std::cos(2.0), std::sin(2.0)});
  EXPECT_NEAR((fundamental_field(first, vec({1}), x) - vec({-std::sin(th), std::cos(th), 0, 0})).norm(), 0.0, 1e-15);

  const ReductionScenario lm = make_scenario("linear_momentum", 1);
  const Vec v = vec({1, 2, 2});
  EXPECT_NEAR((fundamental_field(lm.action, v, Vec::Zero(6)) - vec({1, 2, 2, 1, 2, 2})).norm(), 0.0, 1e-15);
}

TEST(Actions, CotangentLiftOfTranslations) {
  const ReductionScenario lm = make_scenario("linear_momentum", 1);
  const CotangentPoint alpha = make_cotangent_point(lm.q, vec({0, 1, 2, 3, 4, 5}), vec({1, 0, 0, 0, 1, 0}));
  const CotangentPoint moved = cotangent_lift(lm.action, {vec({1, 2, 3})}, alpha);
  EXPECT_EQ(moved.base.coords, vec({1, 3, 5, 4, 6, 8}));
  EXPECT_EQ(moved.p, alpha.p);
  const CotangentPoint same = cotangent_lift(lm.action, lm.action.identity(), alpha);
  EXPECT_EQ(same.coords(), alpha.coords());
}

TEST(Actions, MomentumOracle) {
  const ReductionScenario lm = make_scenario("linear_momentum", 1);
  const CotangentPoint alpha = make_cotangent_point(lm.q, Vec::Zero(6), vec({1, 2, 3, -1, 0, 1}));
  EXPECT_NEAR((J_ct(lm.action, alpha) - vec({0, 2, 4})).norm(), 0.0, 1e-15);

  const GroupActionSpec first = GroupActionSpec::torus_rotation(4, {0});
  const CotangentPoint orth = make_cotangent_point(ManifoldSpec::torus(2), vec({1, 0, 1, 0}), vec({0, 0, 0, 2}));
  EXPECT_EQ(J_ct(first, orth, vec({1})), 0.0);
  const CotangentPoint along = make_cotangent_point(ManifoldSpec::torus(2), vec({1, 0, 1, 0}), vec({0, 3, 0, 2}));
  EXPECT_NEAR(J_ct(first, along, vec({1})), 3.0, 1e-15);
}

TEST(Actions, CosphereLiftAtIdentity) {
  const ManifoldSpec q = ManifoldSpec::sphere(3);
  const GroupActionSpec a = GroupActionSpec::circle_on_s3();
  Rng rng(2);
  const CospherePoint s = random_cosphere(q, rng);
  const LiftAndScale ls = cosphere_lift_and_scale(a, a.identity(), s, SectionSigma::metric());
  EXPECT_EQ(ls.image.coords(), s.coords());
  EXPECT_EQ(ls.scale, 1.0);
}

TEST(Actions, LatticeHasNoAlgebra) {
  const ReductionScenario s = make_scenario("paral2", 2);
  EXPECT_EQ(s.action.algebra_dim(), 0);
  EXPECT_EQ(s.action.group_dim(), 2);
  Rng rng(3);
  const BifurcationReport rep = bifurcation_check(s.q, s.action, random_cosphere(s.q, rng), s.sigma);
  EXPECT_EQ(rep.algebra_dim, 0);
  EXPECT_TRUE(rep.holds());
  EXPECT_THROW(s.action.restricted(Mat::Identity(2, 1)), GeometryError);
  const Vec x = vec({0.1, 0.2});
  EXPECT_NEAR((s.action.act({vec({1, -2})}, x) - vec({0.1 + 2 * M_PI, 0.2 - 4 * M_PI})).norm(), 0.0, 1e-14);
}

TEST(Actions, HopfBifurcation) {
  const ReductionScenario s = make_scenario("paral3");
  Rng rng(4);
  for (int i = 0; i < 16; ++i) {
    const BifurcationReport rep = bifurcation_check(s.q, s.action, random_cosphere(s.q, rng), s.sigma);
    EXPECT_EQ(rep.image_rank, 1);
    EXPECT_EQ(rep.degenerate_dim, 0);
    EXPECT_LE(rep.pairing_residual, 1e-9);
  }
}

TEST(Actions, InputErrors) {
  const GroupActionSpec a = GroupActionSpec::torus_rotation(4, {0, 2});
  EXPECT_THROW(fundamental_field(a, vec({1}), vec({1, 0, 1, 0})), GeometryError);
  EXPECT_THROW(GroupActionSpec::torus_rotation(4, {3}), GeometryError);
  EXPECT_THROW(GroupActionSpec::translations(Mat::Zero(3, 1)), GeometryError);
  const GroupActionSpec t = GroupActionSpec::translations(Mat::Identity(2, 2));
  Rng rng(5);
  const CospherePoint s = random_cosphere(ManifoldSpec::euclidean(2), rng);
  EXPECT_THROW(torus_average_residual(ManifoldSpec::euclidean(2), t, s, SectionSigma::metric(), {}), GeometryError);
}

TEST(Actions, CanonicalSlices) {
  const ReductionScenario lm = make_scenario("linear_momentum", 1);
  const GroupActionSpec k = lm.reduction_group();
  Rng rng(6);
  const Vec x = sample_point(lm.q, rng).coords;
  const Vec moved = k.act(k.canonicalizing_element(x), x);
  for (int j = 0; j < k.algebra_dim(); ++j)
    EXPECT_NEAR(fundamental_field(k, Vec::Unit(k.algebra_dim(), j), moved).dot(moved), 0.0, 1e-12);

  const ReductionScenario al = make_scenario("albert_torus", 3);
  const GroupActionSpec ka = al.reduction_group();
  const Vec y = sample_point(al.q, rng).coords;
  const Vec c = ka.act(ka.canonicalizing_element(y), y);
  for (int b = 0; b < 2; ++b) EXPECT_NEAR((c.segment(2 * b, 2) - vec({1, 0})).norm(), 0.0, 1e-12);
  EXPECT_NEAR((c.segment(4, 2) - y.segment(4, 2)).norm(), 0.0, 1e-15);
}

TEST(ActionsProperty, GroupLawAndFlow) {
  for (const ReductionScenario& s : scenarios()) {
    const GroupActionSpec& a = s.action;
    Rng rng(41);
    for (int i = 0; i < 50; ++i) {
      const Vec x = sample_point(s.q, rng).coords;
      const GroupElement g = a.sample_element(rng);
      const GroupElement h = a.sample_element(rng);
      ASSERT_EQ(a.act(a.identity(), x), x) << s.name;
      ASSERT_LE((a.act(a.compose(g, h), x) - a.act(g, a.act(h, x))).norm(), 1e-12) << s.name;
      ASSERT_LE((a.act(a.inverse(g), a.act(g, x)) - x).norm(), 1e-12) << s.name;
      ASSERT_LE(constraint_residual(s.q, a.act(g, x)), 1e-12) << s.name;
      if (a.algebra_dim() == 0) continue;
      const Vec xi = random_algebra(a.algebra_dim(), rng);
      const double t = kFiniteDifferenceStep;
      const Vec fd = (a.act(a.exp(Vec(t * xi)), x) - a.act(a.exp(Vec(-t * xi)), x)) / (2 * t);
      ASSERT_LE((fd - fundamental_field(a, xi, x)).norm(), 1e-6) << s.name;
    }
  }
}

TEST(ActionsProperty, Freeness) {
  for (const ReductionScenario& s : scenarios()) {
    const int k = s.action.algebra_dim();
    if (k == 0) continue;
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
      const Vec x = sample_point(s.q, rng).coords;
      Mat fields(x.size(), k);
      for (int j = 0; j < k; ++j) fields.col(j) = fundamental_field(s.action, Vec::Unit(k, j), x);
      Eigen::JacobiSVD<Mat> svd(fields);
      ASSERT_GE(svd.singularValues().minCoeff(), 1e-6) << s.name;
    }
  }
}

TEST(ActionsProperty, LiftPreservesLiouvilleFormAndNorm) {
  for (const ReductionScenario& s : scenarios()) {
    const ManifoldSpec bundle = ManifoldSpec::cotangent_bundle(s.q);
    Rng rng(43);
    for (int i = 0; i < 50; ++i) {
      const CospherePoint c = random_cosphere(s.q, rng);
      CotangentPoint alpha = c.rep;
      alpha.p *= 2.5;
      const GroupElement g = s.action.sample_element(rng);
      const Vec v = sample_tangent(bundle, alpha.coords(), rng);
      ASSERT_LE(liouville_invariance_residual(s.q, s.action, g, alpha, v), 1e-9) << s.name;
      const CotangentPoint moved = cotangent_lift(s.action, g, alpha);
      ASSERT_EQ(moved.base.coords, s.action.act(g, alpha.base.coords)) << s.name;
      ASSERT_LE(std::abs(moved.p.norm() - alpha.p.norm()), 1e-12) << s.name;
    }
  }
}

TEST(ActionsProperty, ScaleIdentity) {
  for (const ReductionScenario& s : scenarios()) {
    const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(s.q);
    Rng rng(44);
    for (int i = 0; i < 50; ++i) {
      const CospherePoint c = random_cosphere(s.q, rng);
      const GroupElement g = s.action.sample_element(rng);
      const Vec w = sample_tangent(bundle, c.coords(), rng);
      ASSERT_LE(scale_identity_residual(s.q, s.action, g, c, s.sigma, w), 1e-9) << s.name;
      ASSERT_LE(std::abs(cosphere_lift_and_scale(s.action, g, c, s.sigma).scale - 1.0), 1e-12) << s.name;
      ASSERT_LE(scale_identity_residual(s.q, s.action, g, c, SectionSigma::scaled(0.3), w), 1e-9) << s.name;
    }
  }
}

TEST(ActionsProperty, TorusAverage) {
  for (const ReductionScenario& s : scenarios()) {
    if (s.action.family() != ActionFamily::TorusRotation && s.action.family() != ActionFamily::CircleOnS3)
      continue;
    const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(s.q);
    Rng rng(45);
    for (int i = 0; i < 8; ++i) {
      const CospherePoint c = random_cosphere(s.q, rng);
      std::vector<Vec> probes;
      for (int j = 0; j < 4; ++j) probes.push_back(sample_tangent(bundle, c.coords(), rng));
      ASSERT_LE(torus_average_residual(s.q, s.action, c, s.sigma, probes), 1e-8) << s.name;
    }
  }
}

TEST(ActionsProperty, MomentumMap) {
  for (const ReductionScenario& s : scenarios()) {
    const int k = s.action.algebra_dim();
    if (k == 0) continue;
    const OneFormField eta = theta_sigma_form(s.q, s.sigma);
    const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(s.q);
    Rng rng(46);
    for (int i = 0; i < 32; ++i) {
      const CospherePoint c = random_cosphere(s.q, rng);
      const Vec xi = random_algebra(k, rng);
      const double via_form = J_cosphere(s.q, s.action, c, xi, s.sigma);
      const double via_rep = J_cosphere_via_representative(s.action, c.rep, xi, s.sigma);
      ASSERT_LE(std::abs(via_form - via_rep), 1e-9) << s.name;

      CotangentPoint scaled = c.rep;
      scaled.p *= 3.0;
      ASSERT_LE(std::abs(J_cosphere_via_representative(s.action, scaled, xi, s.sigma) - via_rep), 1e-12) << s.name;

      const GroupElement g = s.action.sample_element(rng);
      const CospherePoint moved = cosphere_lift_and_scale(s.action, g, c, s.sigma).image;
      ASSERT_LE(std::abs(J_cosphere(s.q, s.action, moved, xi, s.sigma) - via_form), 1e-9) << s.name;

      const BifurcationReport rep = bifurcation_check(s.q, s.action, c, s.sigma);
      ASSERT_TRUE(rep.holds()) << s.name;
      ASSERT_LE(rep.pairing_residual, 1e-9) << s.name;

      if (bundle.intrinsic_dim() <= kMaxTopFormDim) {
        const Vec r = reeb_vector(eta, c.coords());
        ASSERT_LE(std::abs(momentum_gradient(s.action, xi, c.coords(), s.sigma).dot(r)), 1e-8) << s.name;
      }
    }
  }
}
