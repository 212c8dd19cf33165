#include "contactred/reduction.hpp"

#include <Eigen/LU>

#include "contactred/error.hpp"

namespace contactred {

namespace {

constexpr double kLevelTolerance = 1e-8;
constexpr double kRayMargin = 1e-8;
constexpr int kMaxSampleAttempts = 1000;

Vec gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

// Columns xi_Q(x) for the coordinate basis of the action's algebra.
Mat orbit_directions(const GroupActionSpec& a, const Vec& x) {
  const int k = a.algebra_dim();
  Mat v(x.size(), k);
  for (int i = 0; i < k; ++i) v.col(i) = a.fundamental_field<double>(Vec::Unit(k, i), x);
  return v;
}

// Algebra directions whose momentum component must vanish on the level set.
Mat constrained_directions(const ReductionScenario& s) {
  const int k = s.action.algebra_dim();
  if (s.zero_momentum()) return Mat::Identity(k, k);
  return kernel_algebra(s.action, s.mu).basis;
}

CospherePoint unit_point(const Vec& y) {
  const Eigen::Index n = y.size() / 2;
  const Vec p = y.tail(n);
  return {{{y.head(n)}, p / p.norm()}};
}

}  // namespace

GroupActionSpec ReductionScenario::reduction_group() const {
  if (zero_momentum()) return action;
  return action.restricted(kernel_algebra(action, mu).basis);
}

KernelAlgebra kernel_algebra(const GroupActionSpec& a, const Vec& mu) {
  const int k = a.algebra_dim();
  if (mu.size() != k) throw GeometryError("kernel_algebra: momentum value has wrong size");
  if (mu.norm() == 0.0) throw GeometryError("kernel_algebra: mu = 0 belongs to reduction at zero");
  const Vec u = mu / mu.norm();
  const Mat proj = Mat::Identity(k, k) - u * u.transpose();
  KernelAlgebra out{orthonormal_span(proj), false};
  // g_mu = g for abelian algebras.
  Mat sum(k, out.basis.cols() + k);
  sum << out.basis, Mat::Identity(k, k);
  out.condition = numerical_rank(sum) == k;
  return out;
}

std::vector<CospherePoint> sample_level(const ReductionScenario& s, int count, Rng& rng) {
  const int n = s.q.ambient_dim();
  const int k = s.action.algebra_dim();
  std::vector<CospherePoint> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxSampleAttempts && !done; ++attempt) {
      const Vec x = sample_point(s.q, rng).coords;
      const Mat v = orbit_directions(s.action, x);
      const Mat basis = orthonormal_span(v);
      if (basis.cols() >= s.q.intrinsic_dim() && s.zero_momentum())
        throw GeometryError("sample_level: the orbit annihilator is empty");
      Vec p = s.q.project_base<double>(x, gaussian(n, rng));
      if (basis.cols() > 0) p -= basis * (basis.transpose() * p);
      if (!s.zero_momentum()) {
        if (numerical_rank(v) != k) continue;
        // V^T p = mu on top of a random annihilating part.
        p += v * (v.transpose() * v).lu().solve(s.mu);
      }
      if (p.norm() < kCovectorCutoff) continue;
      p /= p.norm();
      CospherePoint pt{{{x}, p}};
      if (level_residual(s, pt) > kLevelTolerance * 1e-2) continue;
      out.push_back(pt);
      done = true;
    }
    if (!done) throw GeometryError("sample_level: the ray constraint is infeasible");
  }
  return out;
}

double level_residual(const ReductionScenario& s, const CospherePoint& pt) {
  if (s.action.algebra_dim() == 0) return 0.0;
  const Vec j = J_ct(s.action, pt.rep);
  const Mat beta = constrained_directions(s);
  double r = beta.cols() ? (beta.transpose() * j).cwiseAbs().maxCoeff() : 0.0;
  if (!s.zero_momentum()) {
    const double t = j.dot(s.mu) / s.mu.squaredNorm();
    if (!(t > kRayMargin)) r = std::max(r, 1.0);
  }
  return r;
}

Vec reduced_covector(const ReductionScenario& s, const GroupActionSpec& group, const Vec& y) {
  const int n = s.q.ambient_dim();
  const int m = s.quotient.ambient_dim();
  const Vec x = y.head(n);
  const Vec p = y.tail(n);
  const Mat pq = tangent_projector(s.q, x);
  const Mat vert = orthonormal_span(orbit_directions(group, x));
  const Mat horizontal = orthonormal_span(Mat(pq - vert * (vert.transpose() * pq)));
  const Mat b = s.quotient_map.jacobian(x) * horizontal;
  if (numerical_rank(b) != s.quotient.intrinsic_dim() || b.cols() != s.quotient.intrinsic_dim())
    throw GeometryError("reduced_covector: quotient map is not a submersion on horizontals");
  const Vec coef = (b.transpose() * b).lu().solve(horizontal.transpose() * p);
  Vec out(2 * m);
  out << s.quotient_map(x), b * coef;
  return out;
}

CospherePoint phi0_reduced(const ReductionScenario& s, const GroupActionSpec& group, const CospherePoint& pt) {
  const int k = group.algebra_dim();
  for (int i = 0; i < k; ++i)
    if (std::abs(J_ct(group, pt.rep, Vec::Unit(k, i))) > kLevelTolerance)
      throw GeometryError("phi0_reduced: point is off the zero level set");
  return unit_point(reduced_covector(s, group, pt.coords()));
}

CospherePoint phi0_reduced(const ReductionScenario& s, const CospherePoint& pt) {
  if (!s.zero_momentum()) throw GeometryError("phi0_reduced: scenario has nonzero momentum value");
  return phi0_reduced(s, s.action, pt);
}

CospherePoint psi_mu_reduced(const ReductionScenario& s, const CospherePoint& pt) {
  if (s.zero_momentum()) throw GeometryError("psi_mu_reduced: scenario has zero momentum value");
  if (level_residual(s, pt) > kLevelTolerance) throw GeometryError("psi_mu_reduced: point is off the ray level set");
  return unit_point(reduced_covector(s, s.reduction_group(), pt.coords()));
}

double reduction_factor(const ReductionScenario& s, const Vec& y) {
  const int n = s.q.ambient_dim();
  const int m = s.quotient.ambient_dim();
  const Vec red = reduced_covector(s, s.reduction_group(), y);
  return s.big_sigma.f(red.tail(m)) / s.sigma.f(y.tail(n));
}

Mat level_tangent_basis(const ReductionScenario& s, const Vec& y, bool cosphere) {
  const ManifoldSpec bundle =
      cosphere ? ManifoldSpec::cosphere_bundle(s.q) : ManifoldSpec::cotangent_bundle(s.q);
  const Mat jac = constraint_jacobian(bundle, y);
  const Mat beta = s.action.algebra_dim() ? constrained_directions(s) : Mat(0, 0);
  Mat stacked(jac.rows() + beta.cols(), jac.cols());
  stacked.topRows(jac.rows()) = jac;
  for (Eigen::Index j = 0; j < beta.cols(); ++j)
    stacked.row(jac.rows() + j) =
        momentum_gradient(s.action, beta.col(j), y, SectionSigma::metric()).transpose();
  return null_space(stacked);
}

IdentitySample reduction_identity(const ReductionScenario& s, const Vec& y, const Vec& v, Backend backend) {
  const int m = s.quotient.ambient_dim();
  IdentitySample out;
  Vec image;
  Vec dimage;
  if (backend == Backend::Dual) {
    VecT<D1> yd(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) yd[i] = D1(y[i], v[i]);
    const VecT<D1> r = reduced_point<D1>(s, yd);
    image = values(r);
    dimage = derivatives(r);
  } else {
    const double h = kFiniteDifferenceStep;
    image = reduced_point<double>(s, y);
    dimage = (reduced_point<double>(s, Vec(y + h * v)) - reduced_point<double>(s, Vec(y - h * v))) / (2 * h);
  }
  out.lhs = s.big_sigma.scale() * image.tail(m).dot(dimage.head(m));
  const SmoothMap pi = cosphere_projection(s.q);
  const Vec pushed = pi.push_forward(y, v, backend);
  out.rhs = theta_sigma_form(s.q, s.sigma)(pi(y), pushed);
  out.factor = reduction_factor(s, y);
  return out;
}

DimensionAudit dimension_audit(const ReductionScenario& s, const std::vector<CospherePoint>& pts) {
  if (pts.empty()) throw GeometryError("dimension_audit: no sample points");
  DimensionAudit out;
  out.expected_reduced_dim = s.expected_reduced_dim;
  const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(s.q);
  const GroupActionSpec group = s.reduction_group();
  const int r = group.algebra_dim();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec y = pts[i].coords();
    const int level = static_cast<int>(level_tangent_basis(s, y, true).cols());
    Mat fields(y.size(), r);
    for (int j = 0; j < r; ++j) fields.col(j) = lifted_fundamental_field(group, Vec::Unit(r, j), y);
    const int orbit = numerical_rank(fields);
    if (i == 0) {
      out.level_dim = level;
      out.orbit_dim = orbit;
    } else if (level != out.level_dim || orbit != out.orbit_dim) {
      out.stable = false;
    }
  }
  out.reduced_dim = out.level_dim - out.orbit_dim;
  return out;
}

InjectivityReport injectivity_check(const ReductionScenario& s, int pairs, Rng& rng) {
  if (s.zero_momentum()) throw GeometryError("injectivity_check: scenario has zero momentum value");
  const GroupActionSpec group = s.reduction_group();
  auto canonical = [&](const CospherePoint& pt) {
    const GroupElement g = group.canonicalizing_element(pt.rep.base.coords);
    return cosphere_lift_and_scale(group, g, pt, s.sigma).image.coords();
  };
  InjectivityReport out;
  out.pairs = pairs;
  for (int i = 0; i < pairs; ++i) {
    const CospherePoint a = sample_level(s, 1, rng).front();
    const bool same = i % 2 == 0;
    const CospherePoint b =
        same ? cosphere_lift_and_scale(group, group.sample_element(rng), a, s.sigma).image
             : sample_level(s, 1, rng).front();
    const double dist = (psi_mu_reduced(s, a).coords() - psi_mu_reduced(s, b).coords()).norm();
    if (same) {
      out.same_class_max_distance = std::max(out.same_class_max_distance, dist);
    } else if (dist <= 1e-8 && (canonical(a) - canonical(b)).norm() > 1e-6) {
      ++out.collisions;
    }
  }
  return out;
}

}  // namespace contactred
