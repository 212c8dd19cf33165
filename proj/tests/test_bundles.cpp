#include <gtest/gtest.h>

#include "contactred/bundles.hpp"
#include "contactred/error.hpp"

using namespace contactred;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

std::vector<ManifoldSpec> bases() {
  return {ManifoldSpec::euclidean(2), ManifoldSpec::euclidean(6), ManifoldSpec::sphere(2), ManifoldSpec::sphere(3),
          ManifoldSpec::torus(2), ManifoldSpec::torus(3)};
}

// Random covector of norm in [0.5, 3] at a random base point.
CotangentPoint random_covector(const ManifoldSpec& q, Rng& rng) {
  std::uniform_real_distribution<double> scale(0.5, 3.0);
  for (;;) {
    const Vec x = sample_point(q, rng).coords;
    const Vec p = sample_tangent(q, x, rng);
    if (p.norm() > 1e-3) return make_cotangent_point(q, x, Vec(scale(rng) * p / p.norm()));
  }
}

}  // namespace

TEST(Bundles, LiouvilleOracle) {
  const ManifoldSpec q = ManifoldSpec::euclidean(2);
  const CotangentPoint alpha = make_cotangent_point(q, vec({0, 0}), vec({3, 4}));
  EXPECT_DOUBLE_EQ(liouville_eval(q, alpha, vec({1, 1, 0, 0})), 7.0);
  EXPECT_DOUBLE_EQ(liouville_eval(q, alpha, vec({0, 0, 5, -2})), 0.0);
  EXPECT_DOUBLE_EQ(liouville_eval(q, alpha, vec({2, 0, 1, 1})), 6.0);
}

TEST(Bundles, LiouvilleRejectsNonTangentVector) {
  const ManifoldSpec q = ManifoldSpec::sphere(2);
  const CotangentPoint alpha = make_cotangent_point(q, vec({0, 0, 1}), vec({1, 0, 0}));
  EXPECT_THROW(liouville_eval(q, alpha, vec({0, 0, 1, 0, 0, 0})), GeometryError);
}

TEST(Bundles, CovectorValidation) {
  const ManifoldSpec q = ManifoldSpec::sphere(2);
  EXPECT_THROW(make_cotangent_point(q, vec({0, 0, 1}), vec({0, 0, 1})), GeometryError);
  EXPECT_THROW(make_cotangent_point(q, vec({0, 0, 1}), vec({1e-9, 0, 0})), GeometryError);
  EXPECT_THROW(make_cotangent_point(q, vec({0, 0, 2}), vec({1, 0, 0})), GeometryError);
  EXPECT_THROW(cosphere_point_from_coords(q, vec({0, 0, 1, 2, 0, 0})), GeometryError);
}

TEST(Bundles, SectionFactorOracles) {
  const ManifoldSpec q = ManifoldSpec::euclidean(2);
  const CotangentPoint alpha = make_cotangent_point(q, vec({0, 0}), vec({3, 4}));
  EXPECT_NEAR(f_sigma(SectionSigma::metric(), alpha), 0.2, 1e-15);
  EXPECT_NEAR(f_sigma(SectionSigma::metric(), cosphere_class(alpha).rep), 1.0, 1e-15);
  EXPECT_NEAR(f_sigma(SectionSigma::scaled(2.0), alpha), 0.4, 1e-15);
  EXPECT_THROW(SectionSigma::metric().f(vec({1e-8, 0})), GeometryError);
  EXPECT_THROW(SectionSigma::scaled(0.0), GeometryError);
}

TEST(Bundles, ThetaSigmaOnUnitRepresentative) {
  const ManifoldSpec q = ManifoldSpec::euclidean(2);
  const CospherePoint s = cosphere_point_from_coords(q, vec({1, 2, 0.6, 0.8}));
  EXPECT_NEAR(theta_sigma_eval(q, SectionSigma::metric(), s, vec({1, 1, -0.8, 0.6})), 1.4, 1e-15);
  EXPECT_NEAR(theta_sigma_eval(q, SectionSigma::scaled(3.0), s, vec({1, 1, -0.8, 0.6})), 4.2, 1e-14);
  EXPECT_THROW(theta_sigma_eval(q, SectionSigma::metric(), s, vec({0, 0, 0.6, 0.8})), GeometryError);
}

TEST(Bundles, SectionChangeOracle) {
  const ManifoldSpec q = ManifoldSpec::sphere(2);
  const SectionSigma sigma = SectionSigma::metric();
  const SectionSigma rho = SectionSigma::scaled(2.0);
  const CospherePoint s = cosphere_point_from_coords(q, vec({0, 0, 1, 1, 0, 0}));
  EXPECT_NEAR(section_change_factor(sigma, sigma, s), 1.0, 1e-15);
  EXPECT_NEAR(section_change_factor(sigma, rho, s), 0.5, 1e-15);
}

TEST(Bundles, ConeOracle) {
  const ManifoldSpec q = ManifoldSpec::euclidean(2);
  const CospherePoint s = cosphere_point_from_coords(q, vec({0, 0, 0.6, 0.8}));
  Rng rng(1);
  const ConeCheckResult one = cone_check(q, SectionSigma::metric(), s, 1.0, rng, 5);
  EXPECT_NEAR((one.image - s.coords()).norm(), 0.0, 1e-15);
  const ConeCheckResult two = cone_check(q, SectionSigma::metric(), s, 2.0, rng, 5);
  EXPECT_NEAR(two.image.tail(2).norm(), 2.0, 1e-15);
  EXPECT_THROW(cone_check(q, SectionSigma::metric(), s, 0.0, rng, 5), GeometryError);
}

TEST(BundlesProperty, PullbackRelation) {
  for (const ManifoldSpec& q : bases()) {
    const ManifoldSpec bundle = ManifoldSpec::cotangent_bundle(q);
    for (const SectionSigma& sigma : {SectionSigma::metric(), SectionSigma::scaled(2.5)}) {
      Rng rng(31);
      for (int i = 0; i < 100; ++i) {
        const CotangentPoint alpha = random_covector(q, rng);
        const Vec v = sample_tangent(bundle, alpha.coords(), rng);
        ASSERT_LE(pullback_relation_residual(q, sigma, alpha, v), 1e-9) << q.name();
        ASSERT_LE(pullback_relation_residual(q, sigma, alpha, v, Backend::CentralDifference), 1e-6) << q.name();
      }
    }
  }
}

TEST(BundlesProperty, SectionHomogeneity) {
  for (const ManifoldSpec& q : bases()) {
    Rng rng(32);
    for (int i = 0; i < 64; ++i) {
      const CotangentPoint alpha = random_covector(q, rng);
      for (double r : {0.5, 2.0, 10.0}) {
        CotangentPoint scaled = alpha;
        scaled.p *= r;
        const double f = f_sigma(SectionSigma::metric(), alpha);
        ASSERT_LE(std::abs(f_sigma(SectionSigma::metric(), scaled) - f / r), 1e-12 * f) << q.name();
      }
    }
  }
}

TEST(BundlesProperty, SectionChangeScalesForm) {
  for (const ManifoldSpec& q : bases()) {
    const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(q);
    const SectionSigma sigma = SectionSigma::metric();
    const SectionSigma rho = SectionSigma::scaled(2.0);
    Rng rng(33);
    for (int i = 0; i < 50; ++i) {
      const CospherePoint s = cosphere_point_from_coords(q, sample_point(bundle, rng).coords);
      const Vec w = sample_tangent(bundle, s.coords(), rng);
      const double g = section_change_factor(sigma, rho, s);
      ASSERT_LE(std::abs(theta_sigma_eval(q, sigma, s, w) - g * theta_sigma_eval(q, rho, s, w)), 1e-9);
      ASSERT_LE(kernel_angle(q, sigma, rho, s), 1e-8);
    }
  }
}

TEST(BundlesProperty, ContactVolumeIsNondegenerate) {
  for (const ManifoldSpec& q : bases()) {
    const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(q);
    if (bundle.intrinsic_dim() > kMaxTopFormDim) continue;
    const OneFormField eta = theta_sigma_form(q, SectionSigma::metric());
    Rng rng(34);
    for (int i = 0; i < 100; ++i) {
      const Vec y = sample_point(bundle, rng).coords;
      ASSERT_GE(std::abs(contact_volume(eta, y, tangent_frame(bundle, y))), 1e-3) << q.name();
    }
  }
}

TEST(BundlesProperty, ConeIsSymplectomorphism) {
  for (const ManifoldSpec& q : bases()) {
    const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(q);
    Rng rng(35);
    std::uniform_real_distribution<double> t(0.2, 5.0);
    for (int i = 0; i < 8; ++i) {
      const CospherePoint s = cosphere_point_from_coords(q, sample_point(bundle, rng).coords);
      const ConeCheckResult r = cone_check(q, SectionSigma::scaled(1.5), s, t(rng), rng, 50);
      ASSERT_EQ(r.pairs, 50);
      ASSERT_LE(r.max_residual, 1e-8) << q.name();
    }
  }
}
