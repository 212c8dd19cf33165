#include "contactred/bundles.hpp"

#include "contactred/error.hpp"

namespace contactred {

Vec CotangentPoint::coords() const {
  Vec y(2 * p.size());
  y << base.coords, p;
  return y;
}

CotangentPoint make_cotangent_point(const ManifoldSpec& q, const Vec& x, const Vec& p) {
  require_on_manifold(q, x);
  if (p.size() != q.ambient_dim()) throw GeometryError("covector has wrong ambient dimension");
  const double off = (p - q.project_base<double>(x, p)).norm();
  if (off > kInputTolerance) throw GeometryError("covector is not tangent to the base");
  if (p.norm() < kCovectorCutoff) throw GeometryError("covector below degeneracy cutoff");
  return {{x}, p};
}

CotangentPoint cotangent_point_from_coords(const ManifoldSpec& q, const Vec& y) {
  const int n = q.ambient_dim();
  if (y.size() != 2 * n) throw GeometryError("cotangent coordinates have wrong size");
  return make_cotangent_point(q, y.head(n), y.tail(n));
}

CospherePoint cosphere_class(const CotangentPoint& alpha) {
  return {{alpha.base, alpha.p / alpha.p.norm()}};
}

CospherePoint cosphere_point_from_coords(const ManifoldSpec& q, const Vec& y) {
  CotangentPoint alpha = cotangent_point_from_coords(q, y);
  if (std::abs(alpha.p.norm() - 1.0) > kInputTolerance)
    throw GeometryError("cosphere point must carry a unit covector");
  return cosphere_class(alpha);
}

SectionSigma SectionSigma::scaled(double c) {
  if (!(c > 0.0)) throw GeometryError("section scale must be positive");
  return SectionSigma(c);
}

double SectionSigma::f(const Vec& p) const {
  const double n = p.norm();
  if (n < kCovectorCutoff) throw GeometryError("f_sigma: covector below degeneracy cutoff");
  return scale_ / n;
}

Vec SectionSigma::lift(const Vec& y) const {
  const Eigen::Index n = y.size() / 2;
  Vec out = y;
  out.tail(n) *= scale_;
  return out;
}

double f_sigma(const SectionSigma& sigma, const CotangentPoint& alpha) { return sigma.f(alpha.p); }

OneFormField liouville_form(const ManifoldSpec& q) {
  const int n = q.ambient_dim();
  return OneFormField(ManifoldSpec::cotangent_bundle(q), [n](const auto& y, const auto& v) {
    return dot(std::decay_t<decltype(y)>(y.tail(n)), std::decay_t<decltype(v)>(v.head(n)));
  });
}

OneFormField theta_sigma_form(const ManifoldSpec& q, const SectionSigma& sigma) {
  const int n = q.ambient_dim();
  const double c = sigma.scale();
  return OneFormField(ManifoldSpec::cosphere_bundle(q), [n, c](const auto& y, const auto& v) {
    return c * dot(std::decay_t<decltype(y)>(y.tail(n)), std::decay_t<decltype(v)>(v.head(n)));
  });
}

double liouville_eval(const ManifoldSpec& q, const CotangentPoint& alpha, const Vec& v) {
  const ManifoldSpec bundle = ManifoldSpec::cotangent_bundle(q);
  const Vec y = alpha.coords();
  if (v.size() != bundle.ambient_dim()) throw GeometryError("liouville_eval: vector size mismatch");
  if (tangent_residual(bundle, y, v) > kInputTolerance * std::max(1.0, v.norm()))
    throw GeometryError("liouville_eval: vector is not tangent to T*Q");
  return liouville_form(q)(y, v);
}

double theta_sigma_eval(const ManifoldSpec& q, const SectionSigma& sigma, const CospherePoint& s,
                        const Vec& w) {
  const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(q);
  const Vec y = s.coords();
  require_on_manifold(bundle, y);
  if (w.size() != bundle.ambient_dim()) throw GeometryError("theta_sigma_eval: vector size mismatch");
  if (tangent_residual(bundle, y, w) > kInputTolerance * std::max(1.0, w.norm()))
    throw GeometryError("theta_sigma_eval: vector is not tangent to S*Q");
  // theta(sigma(s))(T sigma w): sigma scales the fiber, leaving dq untouched.
  const Vec lifted = sigma.lift(y);
  Vec lifted_w = w;
  lifted_w.tail(q.ambient_dim()) *= sigma.scale();
  return liouville_form(q)(lifted, lifted_w);
}

SmoothMap cosphere_projection(const ManifoldSpec& q) {
  const int n = q.ambient_dim();
  return SmoothMap(2 * n, 2 * n, [n](const auto& y) {
    using V = std::decay_t<decltype(y)>;
    V out = y;
    const V p = y.tail(n);
    out.tail(n) = p / norm(p);
    return out;
  });
}

double pullback_relation_residual(const ManifoldSpec& q, const SectionSigma& sigma,
                                  const CotangentPoint& alpha, const Vec& v, Backend backend) {
  const Vec y = alpha.coords();
  const SmoothMap pi = cosphere_projection(q);
  const Vec pushed = pi.push_forward(y, v, backend);
  const double lhs = theta_sigma_form(q, sigma)(pi(y), pushed);
  const double rhs = f_sigma(sigma, alpha) * liouville_form(q)(y, v);
  return std::abs(lhs - rhs);
}

double section_change_factor(const SectionSigma& sigma, const SectionSigma& rho, const CospherePoint& s) {
  const Vec rho_s = rho.lift(s.coords());
  return sigma.f(rho_s.tail(s.rep.p.size()));
}

double kernel_angle(const ManifoldSpec& q, const SectionSigma& sigma, const SectionSigma& rho,
                    const CospherePoint& s) {
  const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(q);
  const Vec y = s.coords();
  const Mat frame = tangent_frame(bundle, y);
  // The kernel of a covector inside T_s is the orthogonal complement of its
  // restricted coefficient vector.
  auto kernel = [&](const SectionSigma& sec) {
    const Vec c = theta_sigma_form(q, sec).coefficients(y, frame);
    return Mat(frame * null_space(c.transpose()));
  };
  return max_principal_angle(kernel(sigma), kernel(rho));
}

ManifoldSpec cone_manifold(const ManifoldSpec& q) {
  return ManifoldSpec::product({ManifoldSpec::cosphere_bundle(q), ManifoldSpec::euclidean(1)});
}

SmoothMap cone_map(const ManifoldSpec& q, const SectionSigma& sigma) {
  const int n = q.ambient_dim();
  const double c = sigma.scale();
  return SmoothMap(2 * n + 1, 2 * n, [n, c](const auto& z) {
    using V = std::decay_t<decltype(z)>;
    V out(2 * n);
    const auto t = z[2 * n];
    out.head(n) = z.head(n);
    out.tail(n) = (t * c) * V(z.segment(n, n));
    return out;
  });
}

ConeCheckResult cone_check(const ManifoldSpec& q, const SectionSigma& sigma, const CospherePoint& s,
                           double t, Rng& rng, int pairs) {
  if (!(t > 0.0)) throw GeometryError("cone_check: t must be positive");
  const int n = q.ambient_dim();
  const ManifoldSpec cone = cone_manifold(q);
  Vec z(2 * n + 1);
  z << s.coords(), t;
  require_on_manifold(cone, z);

  const SmoothMap tmap = cone_map(q, sigma);
  const OneFormField theta = liouville_form(q);
  const double c = sigma.scale();
  const OneFormField t_theta_sigma(cone, [n, c](const auto& zz, const auto& v) {
    using V = std::decay_t<decltype(zz)>;
    return zz[2 * n] * c * dot(V(zz.segment(n, n)), V(v.head(n)));
  });

  ConeCheckResult out;
  out.image = tmap(z);
  out.pairs = pairs;
  for (int k = 0; k < pairs; ++k) {
    const Vec a = sample_tangent(cone, z, rng);
    const Vec b = sample_tangent(cone, z, rng);
    const double lhs = d_eval(theta, out.image, tmap.push_forward(z, a), tmap.push_forward(z, b));
    const double rhs = d_eval(t_theta_sigma, z, a, b);
    out.max_residual = std::max(out.max_residual, std::abs(lhs - rhs));
  }
  return out;
}

}  // namespace contactred
