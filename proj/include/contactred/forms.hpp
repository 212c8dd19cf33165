#pragma once

// Evaluation-level exterior calculus on embedded manifolds.

#include <functional>
#include <type_traits>
#include <vector>

#include "contactred/manifold.hpp"

namespace contactred {

/// A one-form given by a rule (point, ambient vector) -> real, linear in the
/// vector. The rule is kept at double and D1 so that the exterior derivative
/// can be taken by forward-mode differentiation.
class OneFormField {
 public:
  template <class F>
  OneFormField(ManifoldSpec carrier, F rule) : carrier_(std::move(carrier)), f0_(rule), f1_(rule) {}

  const ManifoldSpec& carrier() const { return carrier_; }

  template <class T>
  T eval(const VecT<T>& y, const VecT<T>& v) const {
    if constexpr (std::is_same_v<T, double>) return f0_(y, v);
    else {
      static_assert(std::is_same_v<T, D1>, "OneFormField: unsupported scalar");
      return f1_(y, v);
    }
  }

  /// Evaluates on the tangent component of v.dir, so the value does not
  /// depend on how the vector is extended off the tangent space.
  double operator()(const Point& q, const TangentVector& v) const;
  /// Raw rule; v is assumed tangent.
  double operator()(const Vec& y, const Vec& v) const { return f0_(y, v); }

  /// Coefficients of the form in an ambient frame: column j of `frame` is
  /// evaluated.
  Vec coefficients(const Vec& y, const Mat& frame) const;

 private:
  ManifoldSpec carrier_;
  std::function<double(const VecT<double>&, const VecT<double>&)> f0_;
  std::function<D1(const VecT<D1>&, const VecT<D1>&)> f1_;
};

/// d(omega)(q)(X, Y), through the retraction chart c(s, t) = R_q(sX + tY):
/// d(omega)(X, Y) = d/ds omega(c)(dc/dt) - d/dt omega(c)(dc/ds) at s = t = 0.
double d_eval(const OneFormField& omega, const Vec& q, const Vec& x, const Vec& y,
              Backend backend = Backend::Dual);
double d_eval(const OneFormField& omega, const Point& q, const TangentVector& x,
              const TangentVector& y, Backend backend = Backend::Dual);

/// Matrix of d(omega)(e_i, e_j) over the columns of `frame`.
Mat d_matrix(const OneFormField& omega, const Vec& q, const Mat& frame,
             Backend backend = Backend::Dual);

/// Largest dimension for which top forms are evaluated by permutation sums.
inline constexpr int kMaxTopFormDim = 9;

/// (eta ^ (d eta)^n)(q)(frame) by full antisymmetrization over the symmetric
/// group, with the determinant normalization (dx^dy^dz(e1, e2, e3) = 1).
double contact_volume(const OneFormField& eta, const Vec& q, const Mat& frame,
                      Backend backend = Backend::Dual);
double contact_volume(const OneFormField& eta, const Point& q,
                      const std::vector<TangentVector>& frame);

/// Evaluates the permutation sum given precomputed eta(e_i) and
/// d(eta)(e_i, e_j).
double top_form_from_coefficients(const Vec& eta_coeff, const Mat& d_eta);

/// Unique R with eta(R) = 1 and d(eta)(R, .) = 0, solved over an orthonormal
/// tangent frame. Throws GeometryError when the system is singular.
Vec reeb_vector(const OneFormField& eta, const Vec& q, Backend backend = Backend::Dual);
TangentVector reeb_vector(const OneFormField& eta, const Point& q);

struct ReebResiduals {
  double eta_minus_one = 0.0;  ///< |eta(R) - 1|
  double max_d_eta = 0.0;      ///< max_i |d(eta)(R, e_i)| over an orthonormal frame
};
ReebResiduals reeb_residuals(const OneFormField& eta, const Vec& q, const Vec& reeb);

}  // namespace contactred
