#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<double>> gives mixed second
// derivatives, which is what the exterior derivative needs.

#include <cmath>
#include <concepts>
#include <type_traits>

#include <Eigen/Core>

namespace contactred {

template <class T>
struct Dual {
  T val{};
  T der{};

  Dual() = default;
  Dual(const T& v) : val(v), der(0.0) {}  // NOLINT(google-explicit-constructor)
  Dual(const T& v, const T& d) : val(v), der(d) {}

  template <class S>
    requires(std::is_arithmetic_v<S> && !std::is_same_v<S, T>)
  Dual(S v) : val(static_cast<double>(v)), der(0.0) {}  // NOLINT

  Dual& operator+=(const Dual& o) {
    val += o.val;
    der += o.der;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    der = der * o.val + val * o.der;
    val *= o.val;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    der = (der * o.val - val * o.der) / (o.val * o.val);
    val /= o.val;
    return *this;
  }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

template <class T>
concept DualScalar = is_dual<T>::value;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.val);
}

template <class T>
Dual<T> operator-(const Dual<T>& a) {
  return {-a.val, -a.der};
}
template <class T>
Dual<T> operator+(Dual<T> a, const Dual<T>& b) {
  return a += b;
}
template <class T>
Dual<T> operator-(Dual<T> a, const Dual<T>& b) {
  return a -= b;
}
template <class T>
Dual<T> operator*(Dual<T> a, const Dual<T>& b) {
  return a *= b;
}
template <class T>
Dual<T> operator/(Dual<T> a, const Dual<T>& b) {
  return a /= b;
}

// Mixed operations with plain doubles.
template <class T>
Dual<T> operator+(const Dual<T>& a, double b) {
  return {a.val + b, a.der};
}
template <class T>
Dual<T> operator+(double a, const Dual<T>& b) {
  return {a + b.val, b.der};
}
template <class T>
Dual<T> operator-(const Dual<T>& a, double b) {
  return {a.val - b, a.der};
}
template <class T>
Dual<T> operator-(double a, const Dual<T>& b) {
  return {a - b.val, -b.der};
}
template <class T>
Dual<T> operator*(const Dual<T>& a, double b) {
  return {a.val * b, a.der * b};
}
template <class T>
Dual<T> operator*(double a, const Dual<T>& b) {
  return {b.val * a, b.der * a};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, double b) {
  return {a.val / b, a.der / b};
}
template <class T>
Dual<T> operator/(double a, const Dual<T>& b) {
  return Dual<T>(T(a)) / b;
}

template <class T>
bool operator<(const Dual<T>& a, const Dual<T>& b) {
  return value_of(a) < value_of(b);
}
template <class T>
bool operator>(const Dual<T>& a, const Dual<T>& b) {
  return value_of(a) > value_of(b);
}
template <class T>
bool operator<=(const Dual<T>& a, const Dual<T>& b) {
  return value_of(a) <= value_of(b);
}
template <class T>
bool operator>=(const Dual<T>& a, const Dual<T>& b) {
  return value_of(a) >= value_of(b);
}
template <class T>
bool operator==(const Dual<T>& a, const Dual<T>& b) {
  return a.val == b.val && a.der == b.der;
}

template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.val), a.der * cos(a.val)};
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.val), -(a.der * sin(a.val))};
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.val);
  return {e, a.der * e};
}
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  T s = sqrt(a.val);
  return {s, a.der / (2.0 * s)};
}
template <class T>
Dual<T> abs(const Dual<T>& a) {
  return value_of(a) < 0.0 ? -a : a;
}

// Seeds a scalar as an independent variable with unit derivative.
template <class T>
Dual<T> variable(const T& v) {
  return {v, T(1.0)};
}

}  // namespace contactred

namespace Eigen {

template <class T>
struct NumTraits<contactred::Dual<T>> : NumTraits<double> {
  using Real = contactred::Dual<T>;
  using NonInteger = contactred::Dual<T>;
  using Nested = contactred::Dual<T>;
  using Literal = contactred::Dual<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2 * NumTraits<T>::ReadCost,
    AddCost = 2 * NumTraits<T>::AddCost,
    MulCost = 3 * NumTraits<T>::MulCost,
  };
};

template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<contactred::Dual<T>, double, BinaryOp> {
  using ReturnType = contactred::Dual<T>;
};
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<double, contactred::Dual<T>, BinaryOp> {
  using ReturnType = contactred::Dual<T>;
};

}  // namespace Eigen
