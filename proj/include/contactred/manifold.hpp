#pragma once

// Embedded-manifold substrate. Every manifold is a constraint set
// {c(y) = 0} in an ambient Euclidean space with the induced metric; cotangent
// and cosphere bundles are built over the base families in the doubled
// ambient space (x, p), where p is the metric dual of the covector.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "contactred/linalg.hpp"

namespace contactred {

using Rng = std::mt19937_64;

enum class Family { Euclidean, Sphere, Torus, Product, CotangentBundle, CosphereBundle };

/// Which differentiation route a derivative is taken with.
enum class Backend { Dual, CentralDifference };

inline constexpr double kPointTolerance = 1e-10;
inline constexpr double kInputTolerance = 1e-9;
inline constexpr double kCovectorCutoff = 1e-6;
inline constexpr double kFiniteDifferenceStep = 1e-6;

class ManifoldSpec {
 public:
  static ManifoldSpec euclidean(int n);
  static ManifoldSpec sphere(int n);
  /// n unit circles in R^{2n}; circle i occupies coordinates (2i, 2i+1).
  static ManifoldSpec torus(int n);
  static ManifoldSpec product(std::vector<ManifoldSpec> factors);
  static ManifoldSpec cotangent_bundle(const ManifoldSpec& base);
  /// Unit covectors of the induced metric.
  static ManifoldSpec cosphere_bundle(const ManifoldSpec& base);

  Family family() const { return family_; }
  int ambient_dim() const { return ambient_; }
  int intrinsic_dim() const { return intrinsic_; }
  int constraint_count() const { return constraint_count_; }
  bool is_bundle() const {
    return family_ == Family::CotangentBundle || family_ == Family::CosphereBundle;
  }
  bool contains_bundle() const;
  const ManifoldSpec& base() const;
  const std::vector<ManifoldSpec>& factors() const { return children_; }
  std::string name() const;

  /// Constraint residual vector; zero exactly on the manifold.
  template <class T>
  VecT<T> constraints(const VecT<T>& y) const;

  /// Family retraction: Euclidean add, Sphere add-then-normalize, Torus
  /// per-circle angle advance, Product componentwise. For bundles the base
  /// point is retracted and the covector re-projected (and renormalized on
  /// the cosphere bundle).
  template <class T>
  VecT<T> retract(const VecT<T>& y, const VecT<T>& u) const;

  /// Closed-form orthogonal projection onto T_x for the base families.
  template <class T>
  VecT<T> project_base(const VecT<T>& x, const VecT<T>& w) const;

  /// Dc(x) * p for the base families: the bundle tangency constraints.
  template <class T>
  VecT<T> normal_pairing(const VecT<T>& x, const VecT<T>& p) const;

 private:
  ManifoldSpec(Family f, int param, int ambient, int intrinsic, std::vector<ManifoldSpec> children);
  void require_base_family() const;

  Family family_;
  int param_;
  int ambient_;
  int intrinsic_;
  int constraint_count_;
  std::vector<ManifoldSpec> children_;
};

struct Point {
  Vec coords;
};

struct TangentVector {
  Point base;
  Vec dir;
};

double constraint_residual(const ManifoldSpec& m, const Vec& y);
Mat constraint_jacobian(const ManifoldSpec& m, const Vec& y, Backend backend = Backend::Dual);

/// Orthogonal projector onto T_y M. Throws if the constraint Jacobian is not
/// of full rank.
Mat tangent_projector(const ManifoldSpec& m, const Vec& y);

/// Orthonormal tangent frame by pivoted Gram-Schmidt on the projected ambient
/// basis vectors.
Mat tangent_frame(const ManifoldSpec& m, const Vec& y);

/// Norm of the constraint Jacobian applied to v.
double tangent_residual(const ManifoldSpec& m, const Vec& y, const Vec& v);

void require_on_manifold(const ManifoldSpec& m, const Vec& y, double tol = kInputTolerance);
/// Throws unless |Dc(y) v| <= tol max(1, |v|).
void require_tangent(const ManifoldSpec& m, const Vec& y, const Vec& v, double tol = kInputTolerance);

TangentVector project_tangent(const ManifoldSpec& m, const Point& q, const Vec& w);
Point retract(const ManifoldSpec& m, const Point& q, const TangentVector& u);

Point sample_point(const ManifoldSpec& m, std::uint64_t seed);
Point sample_point(const ManifoldSpec& m, Rng& rng);
/// Gaussian ambient vector projected onto T_q M.
Vec sample_tangent(const ManifoldSpec& m, const Vec& q, Rng& rng);

// ---------------------------------------------------------------------------
// Template definitions.

template <class T>
VecT<T> ManifoldSpec::constraints(const VecT<T>& y) const {
  VecT<T> out(constraint_count_);
  switch (family_) {
    case Family::Euclidean:
      break;
    case Family::Sphere:
      out[0] = 0.5 * (dot<T>(y, y) - 1.0);
      break;
    case Family::Torus:
      for (int b = 0; b < param_; ++b) {
        const VecT<T> blk = y.segment(2 * b, 2);
        out[b] = 0.5 * (dot<T>(blk, blk) - 1.0);
      }
      break;
    case Family::Product: {
      int off = 0;
      int row = 0;
      for (const auto& f : children_) {
        const VecT<T> c = f.constraints<T>(VecT<T>(y.segment(off, f.ambient_dim())));
        out.segment(row, c.size()) = c;
        off += f.ambient_dim();
        row += static_cast<int>(c.size());
      }
      break;
    }
    case Family::CotangentBundle:
    case Family::CosphereBundle: {
      const ManifoldSpec& q = children_.front();
      const int n = q.ambient_dim();
      const VecT<T> x = y.head(n);
      const VecT<T> p = y.segment(n, n);
      const int k = q.constraint_count();
      out.head(k) = q.constraints<T>(x);
      out.segment(k, k) = q.normal_pairing<T>(x, p);
      if (family_ == Family::CosphereBundle) out[2 * k] = 0.5 * (dot<T>(p, p) - 1.0);
      break;
    }
  }
  return out;
}

template <class T>
VecT<T> ManifoldSpec::project_base(const VecT<T>& x, const VecT<T>& w) const {
  require_base_family();
  switch (family_) {
    case Family::Euclidean:
      return w;
    case Family::Sphere:
      return w - (dot<T>(x, w) / dot<T>(x, x)) * x;
    case Family::Torus: {
      VecT<T> out = w;
      for (int b = 0; b < param_; ++b) {
        const VecT<T> xb = x.segment(2 * b, 2);
        const VecT<T> wb = w.segment(2 * b, 2);
        out.segment(2 * b, 2) = wb - (dot<T>(xb, wb) / dot<T>(xb, xb)) * xb;
      }
      return out;
    }
    case Family::Product: {
      VecT<T> out(ambient_);
      int off = 0;
      for (const auto& f : children_) {
        const int n = f.ambient_dim();
        out.segment(off, n) =
            f.project_base<T>(VecT<T>(x.segment(off, n)), VecT<T>(w.segment(off, n)));
        off += n;
      }
      return out;
    }
    default:
      return w;  // unreachable, guarded by require_base_family
  }
}

template <class T>
VecT<T> ManifoldSpec::normal_pairing(const VecT<T>& x, const VecT<T>& p) const {
  require_base_family();
  VecT<T> out(constraint_count_);
  switch (family_) {
    case Family::Euclidean:
      break;
    case Family::Sphere:
      out[0] = dot<T>(x, p);
      break;
    case Family::Torus:
      for (int b = 0; b < param_; ++b)
        out[b] = dot<T>(VecT<T>(x.segment(2 * b, 2)), VecT<T>(p.segment(2 * b, 2)));
      break;
    case Family::Product: {
      int off = 0;
      int row = 0;
      for (const auto& f : children_) {
        const int n = f.ambient_dim();
        const VecT<T> c =
            f.normal_pairing<T>(VecT<T>(x.segment(off, n)), VecT<T>(p.segment(off, n)));
        out.segment(row, c.size()) = c;
        off += n;
        row += static_cast<int>(c.size());
      }
      break;
    }
    default:
      break;
  }
  return out;
}

template <class T>
VecT<T> ManifoldSpec::retract(const VecT<T>& y, const VecT<T>& u) const {
  using std::cos;
  using std::sin;
  switch (family_) {
    case Family::Euclidean:
      return y + u;
    case Family::Sphere: {
      const VecT<T> s = y + u;
      return s / norm<T>(s);
    }
    case Family::Torus: {
      VecT<T> out(ambient_);
      for (int b = 0; b < param_; ++b) {
        const T c0 = y[2 * b];
        const T c1 = y[2 * b + 1];
        // Tangent coordinate along the unit rotational direction (-c1, c0).
        const T tau = u[2 * b + 1] * c0 - u[2 * b] * c1;
        const T ct = cos(tau);
        const T st = sin(tau);
        out[2 * b] = ct * c0 - st * c1;
        out[2 * b + 1] = ct * c1 + st * c0;
      }
      return out;
    }
    case Family::Product: {
      VecT<T> out(ambient_);
      int off = 0;
      for (const auto& f : children_) {
        const int n = f.ambient_dim();
        out.segment(off, n) = f.retract<T>(VecT<T>(y.segment(off, n)), VecT<T>(u.segment(off, n)));
        off += n;
      }
      return out;
    }
    case Family::CotangentBundle:
    case Family::CosphereBundle: {
      const ManifoldSpec& q = children_.front();
      const int n = q.ambient_dim();
      VecT<T> out(ambient_);
      const VecT<T> x = q.retract<T>(VecT<T>(y.head(n)), VecT<T>(u.head(n)));
      VecT<T> p = q.project_base<T>(x, VecT<T>(y.segment(n, n) + u.segment(n, n)));
      if (family_ == Family::CosphereBundle) p = p / norm<T>(p);
      out.head(n) = x;
      out.segment(n, n) = p;
      return out;
    }
  }
  return y;
}

}  // namespace contactred
