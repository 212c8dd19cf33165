#include "contactred/manifold.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "contactred/error.hpp"

namespace contactred {

ManifoldSpec::ManifoldSpec(Family f, int param, int ambient, int intrinsic,
                           std::vector<ManifoldSpec> children)
    : family_(f),
      param_(param),
      ambient_(ambient),
      intrinsic_(intrinsic),
      constraint_count_(ambient - intrinsic),
      children_(std::move(children)) {}

ManifoldSpec ManifoldSpec::euclidean(int n) {
  if (n < 1) throw GeometryError("euclidean: dimension must be positive");
  return {Family::Euclidean, n, n, n, {}};
}

ManifoldSpec ManifoldSpec::sphere(int n) {
  if (n < 1) throw GeometryError("sphere: dimension must be positive");
  return {Family::Sphere, n, n + 1, n, {}};
}

ManifoldSpec ManifoldSpec::torus(int n) {
  if (n < 1) throw GeometryError("torus: dimension must be positive");
  return {Family::Torus, n, 2 * n, n, {}};
}

ManifoldSpec ManifoldSpec::product(std::vector<ManifoldSpec> factors) {
  if (factors.empty()) throw GeometryError("product: no factors");
  int ambient = 0;
  int intrinsic = 0;
  for (const auto& f : factors) {
    ambient += f.ambient_dim();
    intrinsic += f.intrinsic_dim();
  }
  const int count = static_cast<int>(factors.size());
  return {Family::Product, count, ambient, intrinsic, std::move(factors)};
}

ManifoldSpec ManifoldSpec::cotangent_bundle(const ManifoldSpec& base) {
  if (base.contains_bundle()) throw GeometryError("cotangent_bundle: base must be a base family");
  return {Family::CotangentBundle, 0, 2 * base.ambient_dim(), 2 * base.intrinsic_dim(), {base}};
}

ManifoldSpec ManifoldSpec::cosphere_bundle(const ManifoldSpec& base) {
  if (base.contains_bundle()) throw GeometryError("cosphere_bundle: base must be a base family");
  return {Family::CosphereBundle, 0, 2 * base.ambient_dim(), 2 * base.intrinsic_dim() - 1, {base}};
}

const ManifoldSpec& ManifoldSpec::base() const {
  if (!is_bundle()) throw GeometryError("base: not a bundle");
  return children_.front();
}

bool ManifoldSpec::contains_bundle() const {
  if (is_bundle()) return true;
  for (const auto& f : children_)
    if (f.contains_bundle()) return true;
  return false;
}

void ManifoldSpec::require_base_family() const {
  if (is_bundle()) throw GeometryError("operation defined only for base families");
}

std::string ManifoldSpec::name() const {
  std::ostringstream os;
  switch (family_) {
    case Family::Euclidean:
      os << "R^" << param_;
      break;
    case Family::Sphere:
      os << "S^" << param_;
      break;
    case Family::Torus:
      os << "T^" << param_;
      break;
    case Family::Product:
      for (std::size_t i = 0; i < children_.size(); ++i) os << (i ? " x " : "") << children_[i].name();
      break;
    case Family::CotangentBundle:
      os << "T*(" << children_.front().name() << ")";
      break;
    case Family::CosphereBundle:
      os << "S*(" << children_.front().name() << ")";
      break;
  }
  return os.str();
}

double constraint_residual(const ManifoldSpec& m, const Vec& y) {
  if (y.size() != m.ambient_dim()) throw GeometryError("constraint_residual: ambient size mismatch");
  const Vec c = m.constraints<double>(y);
  return c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
}

Mat constraint_jacobian(const ManifoldSpec& m, const Vec& y, Backend backend) {
  const int n = m.ambient_dim();
  Mat jac(m.constraint_count(), n);
  if (backend == Backend::Dual) {
    VecT<D1> yd = y.cast<D1>();
    for (int j = 0; j < n; ++j) {
      yd[j].der = 1.0;
      jac.col(j) = derivatives(m.constraints<D1>(yd));
      yd[j].der = 0.0;
    }
  } else {
    const double h = kFiniteDifferenceStep;
    for (int j = 0; j < n; ++j) {
      Vec yp = y;
      Vec ym = y;
      yp[j] += h;
      ym[j] -= h;
      jac.col(j) = (m.constraints<double>(yp) - m.constraints<double>(ym)) / (2 * h);
    }
  }
  return jac;
}

Mat tangent_projector(const ManifoldSpec& m, const Vec& y) {
  const int n = m.ambient_dim();
  if (m.constraint_count() == 0) return Mat::Identity(n, n);
  const Mat jac = constraint_jacobian(m, y);
  const Mat normals = orthonormal_span(jac.transpose());
  if (normals.cols() != m.constraint_count())
    throw GeometryError("tangent_projector: constraint Jacobian is rank deficient");
  return Mat::Identity(n, n) - normals * normals.transpose();
}

Mat tangent_frame(const ManifoldSpec& m, const Vec& y) {
  const Mat frame = orthonormal_span(tangent_projector(m, y));
  if (frame.cols() != m.intrinsic_dim()) throw GeometryError("tangent_frame: wrong tangent dimension");
  return frame;
}

double tangent_residual(const ManifoldSpec& m, const Vec& y, const Vec& v) {
  if (m.constraint_count() == 0) return 0.0;
  return (constraint_jacobian(m, y) * v).cwiseAbs().maxCoeff();
}

void require_on_manifold(const ManifoldSpec& m, const Vec& y, double tol) {
  if (y.size() != m.ambient_dim()) throw GeometryError("point has wrong ambient dimension for " + m.name());
  const double r = constraint_residual(m, y);
  if (!(r <= tol)) {
    std::ostringstream os;
    os << "point is off " << m.name() << " (residual " << r << ")";
    throw GeometryError(os.str());
  }
}

void require_tangent(const ManifoldSpec& m, const Vec& y, const Vec& v, double tol) {
  if (v.size() != m.ambient_dim()) throw GeometryError("vector has wrong ambient dimension for " + m.name());
  if (!(tangent_residual(m, y, v) <= tol * std::max(1.0, v.norm())))
    throw GeometryError("vector is not tangent to " + m.name());
}

TangentVector project_tangent(const ManifoldSpec& m, const Point& q, const Vec& w) {
  require_on_manifold(m, q.coords);
  if (w.size() != m.ambient_dim()) throw GeometryError("project_tangent: vector size mismatch");
  return {q, tangent_projector(m, q.coords) * w};
}

Point retract(const ManifoldSpec& m, const Point& q, const TangentVector& u) {
  require_on_manifold(m, q.coords);
  require_tangent(m, q.coords, u.dir);
  return {m.retract<double>(q.coords, u.dir)};
}

namespace {

Vec gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Vec sample_base(const ManifoldSpec& m, Rng& rng) {
  switch (m.family()) {
    case Family::Euclidean:
      return gaussian(m.ambient_dim(), rng);
    case Family::Sphere: {
      Vec v;
      do {
        v = gaussian(m.ambient_dim(), rng);
      } while (v.norm() < 1e-6);
      return v / v.norm();
    }
    case Family::Torus: {
      std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
      Vec v(m.ambient_dim());
      for (int b = 0; b < m.intrinsic_dim(); ++b) {
        const double a = angle(rng);
        v[2 * b] = std::cos(a);
        v[2 * b + 1] = std::sin(a);
      }
      return v;
    }
    case Family::Product: {
      Vec v(m.ambient_dim());
      int off = 0;
      for (const auto& f : m.factors()) {
        v.segment(off, f.ambient_dim()) = sample_point(f, rng).coords;
        off += f.ambient_dim();
      }
      return v;
    }
    default:
      throw GeometryError("sample_base: not a base family");
  }
}

}  // namespace

Point sample_point(const ManifoldSpec& m, Rng& rng) {
  if (!m.is_bundle()) return {sample_base(m, rng)};
  const ManifoldSpec& q = m.base();
  const int n = q.ambient_dim();
  const Vec x = sample_base(q, rng);
  Vec p;
  do {
    p = q.project_base<double>(x, gaussian(n, rng));
  } while (p.norm() < kCovectorCutoff);
  if (m.family() == Family::CosphereBundle) p /= p.norm();
  Vec y(2 * n);
  y << x, p;
  return {y};
}

Point sample_point(const ManifoldSpec& m, std::uint64_t seed) {
  Rng rng(seed);
  return sample_point(m, rng);
}

Vec sample_tangent(const ManifoldSpec& m, const Vec& q, Rng& rng) {
  return tangent_projector(m, q) * gaussian(m.ambient_dim(), rng);
}

}  // namespace contactred
