#pragma once

// Cotangent and cosphere bundles over an embedded configuration manifold.
// Covectors are stored as their metric duals p in T_x Q, so alpha(v) = <p, v>.
// The cosphere bundle is realized by unit representatives (the metric section).

#include "contactred/forms.hpp"
#include "contactred/smooth_map.hpp"

namespace contactred {

struct CotangentPoint {
  Point base;
  Vec p;

  /// Ambient coordinates (x, p) in T*Q.
  Vec coords() const;
};

struct CospherePoint {
  CotangentPoint rep;  ///< unit-norm representative

  Vec coords() const { return rep.coords(); }
};

/// Validating constructors. Throw GeometryError on off-manifold bases,
/// non-tangent covectors, or covectors below the degeneracy cutoff.
CotangentPoint make_cotangent_point(const ManifoldSpec& q, const Vec& x, const Vec& p);
CotangentPoint cotangent_point_from_coords(const ManifoldSpec& q, const Vec& y);
/// Unit representative of the R_+ class of alpha.
CospherePoint cosphere_class(const CotangentPoint& alpha);
CospherePoint cosphere_point_from_coords(const ManifoldSpec& q, const Vec& y);

/// Global section of T*Q \ 0 -> S*Q. `Metric` picks the unit covector
/// (f = 1/|p|); `Scaled(c)` picks c times it (f = c/|p|).
class SectionSigma {
 public:
  static SectionSigma metric() { return SectionSigma(1.0); }
  static SectionSigma scaled(double c);

  bool is_metric() const { return scale_ == 1.0; }
  double scale() const { return scale_; }

  /// f_sigma(alpha) for a covector with metric dual p.
  double f(const Vec& p) const;
  /// Ambient T*Q coordinates of sigma(s) for a unit representative y = (x, p).
  Vec lift(const Vec& y) const;

 private:
  explicit SectionSigma(double c) : scale_(c) {}
  double scale_;
};

double f_sigma(const SectionSigma& sigma, const CotangentPoint& alpha);

/// Liouville form theta on T*Q: theta(x, p)(dx, dp) = <p, dx>.
OneFormField liouville_form(const ManifoldSpec& q);
/// theta_sigma = sigma^* theta on S*Q.
OneFormField theta_sigma_form(const ManifoldSpec& q, const SectionSigma& sigma);

/// theta(alpha)(V); V = (dq, dp) must be tangent to T*Q.
double liouville_eval(const ManifoldSpec& q, const CotangentPoint& alpha, const Vec& v);

/// theta_sigma(s)(w); w must be tangent to S*Q at s.
double theta_sigma_eval(const ManifoldSpec& q, const SectionSigma& sigma, const CospherePoint& s,
                        const Vec& w);

/// The projection pi: T*Q \ 0 -> S*Q, (x, p) -> (x, p/|p|).
SmoothMap cosphere_projection(const ManifoldSpec& q);

/// |theta_sigma(pi(alpha))(T pi V) - f_sigma(alpha) theta(alpha)(V)| for V
/// tangent to T*Q at alpha.
double pullback_relation_residual(const ManifoldSpec& q, const SectionSigma& sigma,
                                  const CotangentPoint& alpha, const Vec& v,
                                  Backend backend = Backend::Dual);

/// g_{sigma rho}(s) = f_sigma(rho(s)), so that theta_sigma = g * theta_rho.
double section_change_factor(const SectionSigma& sigma, const SectionSigma& rho, const CospherePoint& s);

/// Largest principal angle between ker theta_sigma(s) and ker theta_rho(s)
/// inside T_s S*Q.
double kernel_angle(const ManifoldSpec& q, const SectionSigma& sigma, const SectionSigma& rho,
                    const CospherePoint& s);

struct ConeCheckResult {
  Vec image;                  ///< T_sigma(s, t) in T*Q coordinates
  double max_residual = 0.0;  ///< max |T_sigma^* d theta - d(t theta_sigma)|
  int pairs = 0;
};

/// Symplectic cone S*Q x R_+ with form d(t theta_sigma), mapped to T*Q by
/// T_sigma(s, t) = t sigma(s). Compares T_sigma^* d theta with d(t theta_sigma)
/// on `pairs` random tangent pairs of the cone.
ConeCheckResult cone_check(const ManifoldSpec& q, const SectionSigma& sigma, const CospherePoint& s,
                           double t, Rng& rng, int pairs = 50);

/// The cone S*Q x R as an embedded manifold, and the map T_sigma on it.
ManifoldSpec cone_manifold(const ManifoldSpec& q);
SmoothMap cone_map(const ManifoldSpec& q, const SectionSigma& sigma);

}  // namespace contactred
