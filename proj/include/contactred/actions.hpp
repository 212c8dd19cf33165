#pragma once

// Abelian Lie-group actions by ambient isometries, their cotangent and
// cosphere lifts, and the two momentum maps.
//
// Group elements are coordinates g in R^r with exp(t xi) = t xi; composition
// is addition. An action may be restricted to a subalgebra (the kernel group
// K_mu) through an embedding matrix into the family's own coordinates.

#include <optional>
#include <string>
#include <vector>

#include "contactred/bundles.hpp"

namespace contactred {

enum class ActionFamily { TorusRotation, Translations, DiscreteLattice, CircleOnS3 };

struct GroupElement {
  Vec coords;
};

class GroupActionSpec {
 public:
  /// Rotation of the listed circles (ambient offsets of (cos, sin) pairs);
  /// one algebra direction per circle.
  static GroupActionSpec torus_rotation(int ambient_dim, std::vector<int> circle_offsets);
  /// x -> x + B g; the columns of B are the generators.
  static GroupActionSpec translations(Mat generators);
  /// x -> x + B g for integer g. Algebra dimension 0.
  static GroupActionSpec discrete_lattice(Mat generators);
  /// Left multiplication of unit quaternions (in R^4 as (1, i, j, k)) by
  /// e^{i theta}.
  static GroupActionSpec circle_on_s3();

  /// The connected subgroup with Lie algebra spanned by the columns of
  /// `basis` (algebra coordinates, algebra_dim x r).
  GroupActionSpec restricted(const Mat& basis) const;

  ActionFamily family() const { return family_; }
  std::string name() const;
  int ambient_dim() const { return ambient_; }
  int algebra_dim() const { return family_ == ActionFamily::DiscreteLattice ? 0 : group_dim(); }
  /// Number of group coordinates (equals algebra_dim except for lattices).
  int group_dim() const { return static_cast<int>(embed_.cols()); }
  bool acts_by_ambient_isometries() const { return true; }
  bool is_abelian() const { return true; }
  /// Embedding of this action's coordinates into the family coordinates.
  const Mat& embedding() const { return embed_; }

  GroupElement identity() const { return {Vec::Zero(group_dim())}; }
  GroupElement compose(const GroupElement& g, const GroupElement& h) const { return {g.coords + h.coords}; }
  GroupElement inverse(const GroupElement& g) const { return {-g.coords}; }
  GroupElement exp(const Vec& xi) const;
  GroupElement sample_element(Rng& rng) const;

  template <class T>
  VecT<T> act(const VecT<T>& g, const VecT<T>& x) const;
  /// Tangent map T Phi_g applied to an ambient vector.
  template <class T>
  VecT<T> tangent_map(const VecT<T>& g, const VecT<T>& v) const;
  /// Transpose of the tangent map.
  template <class T>
  VecT<T> tangent_map_transpose(const VecT<T>& g, const VecT<T>& v) const;
  /// Closed-form fundamental field xi_Q(x).
  template <class T>
  VecT<T> fundamental_field(const VecT<T>& xi, const VecT<T>& x) const;

  /// Cotangent lift Phi_*(g, (x, p)) = (Phi_g x, (T Phi_{g^{-1}})^T p).
  template <class T>
  VecT<T> cotangent_lift(const VecT<T>& g, const VecT<T>& y) const;

  Vec act(const GroupElement& g, const Vec& x) const { return act<double>(g.coords, x); }

  /// Moves a point to a canonical representative of its orbit (a slice).
  /// Returns the group element used. Supported for translations and for
  /// coordinate-aligned torus subgroups.
  GroupElement canonicalizing_element(const Vec& x) const;

 private:
  GroupActionSpec(ActionFamily f, int ambient, Mat embed);

  template <class T>
  VecT<T> family_coords(const VecT<T>& g) const;

  ActionFamily family_;
  int ambient_;
  Mat embed_;                    // family coords = embed_ * g
  std::vector<int> circles_;     // torus rotation offsets
  Mat generators_;               // translations / lattice
};

// ---- operations on points -------------------------------------------------

Vec fundamental_field(const GroupActionSpec& a, const Vec& xi, const Vec& x);
TangentVector fundamental_field(const GroupActionSpec& a, const Vec& xi, const Point& q);

CotangentPoint cotangent_lift(const GroupActionSpec& a, const GroupElement& g, const CotangentPoint& alpha);

/// Fundamental field of the lifted action on T*Q (or S*Q) at ambient y,
/// by differentiating the lift along exp(t xi).
Vec lifted_fundamental_field(const GroupActionSpec& a, const Vec& xi, const Vec& y,
                             Backend backend = Backend::Dual);

struct LiftAndScale {
  CospherePoint image;
  double scale = 1.0;  ///< f_sigma(Phi_* alpha) / f_sigma(alpha)
};

/// Induced action on S*Q and its contact scale factor.
LiftAndScale cosphere_lift_and_scale(const GroupActionSpec& a, const GroupElement& g,
                                     const CospherePoint& s, const SectionSigma& sigma);

/// The lifted action on S*Q as a smooth map of the ambient coordinates.
SmoothMap cosphere_action_map(const GroupActionSpec& a, const GroupElement& g);

/// |(Phi^_g)^* theta_sigma(w) - scale * theta_sigma(w)| at s for tangent w.
double scale_identity_residual(const ManifoldSpec& q, const GroupActionSpec& a, const GroupElement& g,
                               const CospherePoint& s, const SectionSigma& sigma, const Vec& w);

/// |(Phi_*g)^* theta - theta| at alpha on V tangent to T*Q.
double liouville_invariance_residual(const ManifoldSpec& q, const GroupActionSpec& a,
                                     const GroupElement& g, const CotangentPoint& alpha, const Vec& v);

/// <J_ct(alpha), xi> = alpha(xi_Q(q)).
double J_ct(const GroupActionSpec& a, const CotangentPoint& alpha, const Vec& xi);
/// All components of J_ct in the dual basis.
Vec J_ct(const GroupActionSpec& a, const CotangentPoint& alpha);

/// <J(s), xi> = theta_sigma(s)(xi_{S*Q}(s)).
double J_cosphere(const ManifoldSpec& q, const GroupActionSpec& a, const CospherePoint& s, const Vec& xi,
                  const SectionSigma& sigma);
/// The same pairing through a representative: f_sigma(alpha) <J_ct(alpha), xi>.
double J_cosphere_via_representative(const GroupActionSpec& a, const CotangentPoint& alpha, const Vec& xi,
                                     const SectionSigma& sigma);

/// Gradient of <J, xi> on S*Q in ambient coordinates (metric section).
Vec momentum_gradient(const GroupActionSpec& a, const Vec& xi, const Vec& y, const SectionSigma& sigma,
                      Backend backend = Backend::Dual);

struct BifurcationReport {
  int algebra_dim = 0;
  int image_rank = 0;       ///< rank of T_s J
  int degenerate_dim = 0;   ///< dim {xi : d theta_sigma(xi_N, .) = 0}
  double pairing_residual = 0.0;  ///< max |<T J(v), xi> - d theta(v, xi_N)|
  bool holds() const { return image_rank + degenerate_dim == algebra_dim; }
};

BifurcationReport bifurcation_check(const ManifoldSpec& q, const GroupActionSpec& a, const CospherePoint& s,
                                    const SectionSigma& sigma, Backend backend = Backend::Dual);

/// max over probes of |avg_g (Phi^_g)^* theta_sigma(w) - theta_sigma(w)|, with
/// a 64-point quadrature of the torus group. Throws for non-torus actions.
double torus_average_residual(const ManifoldSpec& q, const GroupActionSpec& a, const CospherePoint& s,
                              const SectionSigma& sigma, const std::vector<Vec>& probes,
                              int nodes = 64);

// ---------------------------------------------------------------------------
// Template definitions.

template <class T>
VecT<T> GroupActionSpec::family_coords(const VecT<T>& g) const {
  VecT<T> out(embed_.rows());
  for (Eigen::Index i = 0; i < embed_.rows(); ++i) {
    T s(0.0);
    for (Eigen::Index j = 0; j < embed_.cols(); ++j) s += embed_(i, j) * g[j];
    out[i] = s;
  }
  return out;
}

namespace detail {

// Left multiplication by the quaternion i: (a, b, c, d) -> (-b, a, -d, c).
template <class T>
VecT<T> quaternion_i_times(const VecT<T>& q) {
  VecT<T> out(4);
  out << -q[1], q[0], -q[3], q[2];
  return out;
}

template <class T>
VecT<T> rotate_blocks(const std::vector<int>& circles, const VecT<T>& angles, const VecT<T>& v) {
  using std::cos;
  using std::sin;
  VecT<T> out = v;
  for (std::size_t b = 0; b < circles.size(); ++b) {
    const int o = circles[b];
    const T c = cos(angles[b]);
    const T s = sin(angles[b]);
    out[o] = c * v[o] - s * v[o + 1];
    out[o + 1] = s * v[o] + c * v[o + 1];
  }
  return out;
}

}  // namespace detail

template <class T>
VecT<T> GroupActionSpec::act(const VecT<T>& g, const VecT<T>& x) const {
  using std::cos;
  using std::sin;
  const VecT<T> f = family_coords<T>(g);
  switch (family_) {
    case ActionFamily::TorusRotation:
      return detail::rotate_blocks<T>(circles_, f, x);
    case ActionFamily::Translations:
    case ActionFamily::DiscreteLattice: {
      VecT<T> out = x;
      for (Eigen::Index j = 0; j < generators_.cols(); ++j)
        for (Eigen::Index i = 0; i < generators_.rows(); ++i) out[i] += generators_(i, j) * f[j];
      return out;
    }
    case ActionFamily::CircleOnS3:
      return cos(f[0]) * x + sin(f[0]) * detail::quaternion_i_times<T>(x);
  }
  return x;
}

template <class T>
VecT<T> GroupActionSpec::tangent_map(const VecT<T>& g, const VecT<T>& v) const {
  using std::cos;
  using std::sin;
  const VecT<T> f = family_coords<T>(g);
  switch (family_) {
    case ActionFamily::TorusRotation:
      return detail::rotate_blocks<T>(circles_, f, v);
    case ActionFamily::Translations:
    case ActionFamily::DiscreteLattice:
      return v;
    case ActionFamily::CircleOnS3:
      return cos(f[0]) * v + sin(f[0]) * detail::quaternion_i_times<T>(v);
  }
  return v;
}

template <class T>
VecT<T> GroupActionSpec::tangent_map_transpose(const VecT<T>& g, const VecT<T>& v) const {
  // Every family acts by orthogonal linear parts, whose transposes are the
  // parts of the inverse element.
  return tangent_map<T>(VecT<T>(-g), v);
}

template <class T>
VecT<T> GroupActionSpec::fundamental_field(const VecT<T>& xi, const VecT<T>& x) const {
  const VecT<T> f = family_coords<T>(xi);
  VecT<T> out = VecT<T>::Zero(x.size());
  switch (family_) {
    case ActionFamily::TorusRotation:
      for (std::size_t b = 0; b < circles_.size(); ++b) {
        const int o = circles_[b];
        out[o] = -(f[b] * x[o + 1]);
        out[o + 1] = f[b] * x[o];
      }
      break;
    case ActionFamily::Translations:
      for (Eigen::Index j = 0; j < generators_.cols(); ++j)
        for (Eigen::Index i = 0; i < generators_.rows(); ++i) out[i] += generators_(i, j) * f[j];
      break;
    case ActionFamily::DiscreteLattice:
      break;
    case ActionFamily::CircleOnS3:
      out = f[0] * detail::quaternion_i_times<T>(x);
      break;
  }
  return out;
}

template <class T>
VecT<T> GroupActionSpec::cotangent_lift(const VecT<T>& g, const VecT<T>& y) const {
  const int n = ambient_;
  VecT<T> out(2 * n);
  out.head(n) = act<T>(g, VecT<T>(y.head(n)));
  // (T Phi_{g^{-1}})^T p.
  out.tail(n) = tangent_map_transpose<T>(VecT<T>(-g), VecT<T>(y.tail(n)));
  return out;
}

}  // namespace contactred
