#include "contactred/smooth_map.hpp"

#include "contactred/error.hpp"

namespace contactred {

Mat SmoothMap::jacobian(const Vec& x, Backend backend) const {
  if (x.size() != in_) throw GeometryError("SmoothMap::jacobian: input size mismatch");
  Mat jac(out_, in_);
  if (backend == Backend::Dual) {
    VecT<D1> xd = x.cast<D1>();
    for (int j = 0; j < in_; ++j) {
      xd[j].der = 1.0;
      jac.col(j) = derivatives(f1_(xd));
      xd[j].der = 0.0;
    }
    return jac;
  }
  const double h = kFiniteDifferenceStep;
  for (int j = 0; j < in_; ++j) {
    Vec xp = x;
    Vec xm = x;
    xp[j] += h;
    xm[j] -= h;
    jac.col(j) = (f0_(xp) - f0_(xm)) / (2 * h);
  }
  return jac;
}

MatT<D1> SmoothMap::jacobian(const VecT<D1>& x) const {
  MatT<D1> jac(out_, in_);
  VecT<D2> xd(in_);
  for (int i = 0; i < in_; ++i) xd[i] = D2(x[i]);
  for (int j = 0; j < in_; ++j) {
    xd[j].der = D1(1.0);
    const VecT<D2> y = f2_(xd);
    for (int i = 0; i < out_; ++i) jac(i, j) = y[i].der;
    xd[j].der = D1(0.0);
  }
  return jac;
}

Vec SmoothMap::push_forward(const Vec& x, const Vec& v, Backend backend) const {
  if (backend == Backend::Dual) {
    VecT<D1> xd(in_);
    for (int i = 0; i < in_; ++i) xd[i] = D1(x[i], v[i]);
    return derivatives(f1_(xd));
  }
  const double h = kFiniteDifferenceStep;
  return (f0_(x + h * v) - f0_(x - h * v)) / (2 * h);
}

}  // namespace contactred
