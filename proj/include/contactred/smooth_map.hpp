#pragma once

#include <functional>
#include <type_traits>

#include "contactred/manifold.hpp"

namespace contactred {

/// A smooth map between ambient spaces, stored at the three scalar types the
/// library differentiates with (double, D1, D2). Build it from a generic
/// lambda taking `const VecT<T>&`.
class SmoothMap {
 public:
  SmoothMap() = default;

  template <class F>
  SmoothMap(int in_dim, int out_dim, F f)
      : in_(in_dim), out_(out_dim), f0_(f), f1_(f), f2_(f) {}

  int in_dim() const { return in_; }
  int out_dim() const { return out_; }
  explicit operator bool() const { return static_cast<bool>(f0_); }

  template <class T>
  VecT<T> apply(const VecT<T>& x) const {
    if constexpr (std::is_same_v<T, double>) return f0_(x);
    else if constexpr (std::is_same_v<T, D1>) return f1_(x);
    else {
      static_assert(std::is_same_v<T, D2>, "SmoothMap: unsupported scalar");
      return f2_(x);
    }
  }

  Vec operator()(const Vec& x) const { return f0_(x); }

  /// Jacobian at x (out_dim x in_dim).
  Mat jacobian(const Vec& x, Backend backend = Backend::Dual) const;

  /// Jacobian with a first-order dual point; the result carries its own
  /// derivative along the seeded direction of x.
  MatT<D1> jacobian(const VecT<D1>& x) const;

  /// Directional derivative Df(x) v.
  Vec push_forward(const Vec& x, const Vec& v, Backend backend = Backend::Dual) const;

 private:
  int in_ = 0;
  int out_ = 0;
  std::function<VecT<double>(const VecT<double>&)> f0_;
  std::function<VecT<D1>(const VecT<D1>&)> f1_;
  std::function<VecT<D2>(const VecT<D2>&)> f2_;
};

}  // namespace contactred
