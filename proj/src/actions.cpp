#include "contactred/actions.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "contactred/error.hpp"

namespace contactred {

GroupActionSpec::GroupActionSpec(ActionFamily f, int ambient, Mat embed)
    : family_(f), ambient_(ambient), embed_(std::move(embed)) {}

GroupActionSpec GroupActionSpec::torus_rotation(int ambient_dim, std::vector<int> circle_offsets) {
  if (circle_offsets.empty()) throw GeometryError("torus_rotation: no circles");
  for (int o : circle_offsets)
    if (o < 0 || o + 1 >= ambient_dim) throw GeometryError("torus_rotation: circle offset out of range");
  const int k = static_cast<int>(circle_offsets.size());
  GroupActionSpec a(ActionFamily::TorusRotation, ambient_dim, Mat::Identity(k, k));
  a.circles_ = std::move(circle_offsets);
  return a;
}

GroupActionSpec GroupActionSpec::translations(Mat generators) {
  if (generators.cols() == 0) throw GeometryError("translations: no generators");
  if (numerical_rank(generators) != generators.cols())
    throw GeometryError("translations: generators must be independent");
  const auto k = generators.cols();
  GroupActionSpec a(ActionFamily::Translations, static_cast<int>(generators.rows()), Mat::Identity(k, k));
  a.generators_ = std::move(generators);
  return a;
}

GroupActionSpec GroupActionSpec::discrete_lattice(Mat generators) {
  if (generators.cols() == 0) throw GeometryError("discrete_lattice: no generators");
  if (numerical_rank(generators) != generators.cols())
    throw GeometryError("discrete_lattice: generators must be independent");
  const auto k = generators.cols();
  GroupActionSpec a(ActionFamily::DiscreteLattice, static_cast<int>(generators.rows()), Mat::Identity(k, k));
  a.generators_ = std::move(generators);
  return a;
}

GroupActionSpec GroupActionSpec::circle_on_s3() {
  return GroupActionSpec(ActionFamily::CircleOnS3, 4, Mat::Identity(1, 1));
}

GroupActionSpec GroupActionSpec::restricted(const Mat& basis) const {
  if (family_ == ActionFamily::DiscreteLattice) throw GeometryError("restricted: lattice has no algebra");
  if (basis.rows() != group_dim()) throw GeometryError("restricted: basis has wrong row count");
  if (basis.cols() == 0 || numerical_rank(basis) != basis.cols())
    throw GeometryError("restricted: basis must be nonempty and independent");
  GroupActionSpec a = *this;
  a.embed_ = embed_ * basis;
  return a;
}

std::string GroupActionSpec::name() const {
  std::ostringstream os;
  switch (family_) {
    case ActionFamily::TorusRotation:
      os << "T^" << group_dim() << " rotations";
      break;
    case ActionFamily::Translations:
      os << "R^" << group_dim() << " translations";
      break;
    case ActionFamily::DiscreteLattice:
      os << "Z^" << group_dim() << " lattice";
      break;
    case ActionFamily::CircleOnS3:
      os << "S^1 on S^3";
      break;
  }
  return os.str();
}

GroupElement GroupActionSpec::exp(const Vec& xi) const {
  if (xi.size() != algebra_dim()) throw GeometryError("exp: algebra element has wrong size");
  return {xi};
}

GroupElement GroupActionSpec::sample_element(Rng& rng) const {
  Vec g(group_dim());
  switch (family_) {
    case ActionFamily::TorusRotation:
    case ActionFamily::CircleOnS3: {
      std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
      for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = angle(rng);
      break;
    }
    case ActionFamily::Translations: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = normal(rng);
      break;
    }
    case ActionFamily::DiscreteLattice: {
      std::uniform_int_distribution<int> step(-3, 3);
      for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = step(rng);
      break;
    }
  }
  return {g};
}

GroupElement GroupActionSpec::canonicalizing_element(const Vec& x) const {
  if (x.size() < ambient_) throw GeometryError("canonicalizing_element: point too short");
  const int r = group_dim();
  switch (family_) {
    case ActionFamily::Translations: {
      // x + M g orthogonal to range(M).
      const Mat m = generators_ * embed_;
      const Vec g = -(m.transpose() * m).lu().solve(m.transpose() * x.head(ambient_));
      return {g};
    }
    case ActionFamily::TorusRotation: {
      Vec g(r);
      for (int j = 0; j < r; ++j) {
        Eigen::Index row = -1;
        for (Eigen::Index i = 0; i < embed_.rows(); ++i) {
          if (std::abs(embed_(i, j)) < 1e-14) continue;
          if (row >= 0 || std::abs(std::abs(embed_(i, j)) - 1.0) > 1e-14)
            throw GeometryError("canonicalizing_element: torus subgroup is not coordinate aligned");
          row = i;
        }
        if (row < 0) throw GeometryError("canonicalizing_element: empty subgroup direction");
        const int o = circles_[row];
        g[j] = -std::atan2(x[o + 1], x[o]) / embed_(row, j);
      }
      return {g};
    }
    case ActionFamily::CircleOnS3: {
      if (std::abs(embed_(0, 0)) < 1e-14) throw GeometryError("canonicalizing_element: trivial subgroup");
      const double a = std::hypot(x[0], x[1]) > 1e-6 ? std::atan2(x[1], x[0]) : std::atan2(x[3], x[2]);
      return {Vec::Constant(1, -a / embed_(0, 0))};
    }
    case ActionFamily::DiscreteLattice:
      break;
  }
  throw GeometryError("canonicalizing_element: unsupported action family");
}

Vec fundamental_field(const GroupActionSpec& a, const Vec& xi, const Vec& x) {
  if (xi.size() != a.algebra_dim()) throw GeometryError("fundamental_field: algebra element has wrong size");
  return a.fundamental_field<double>(xi, x);
}

TangentVector fundamental_field(const GroupActionSpec& a, const Vec& xi, const Point& q) {
  return {q, fundamental_field(a, xi, q.coords)};
}

CotangentPoint cotangent_lift(const GroupActionSpec& a, const GroupElement& g, const CotangentPoint& alpha) {
  const Vec y = a.cotangent_lift<double>(g.coords, alpha.coords());
  const int n = a.ambient_dim();
  return {{y.head(n)}, y.tail(n)};
}

Vec lifted_fundamental_field(const GroupActionSpec& a, const Vec& xi, const Vec& y, Backend backend) {
  if (backend == Backend::Dual) {
    VecT<D1> g(xi.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i) g[i] = D1(0.0, xi[i]);
    return derivatives(a.cotangent_lift<D1>(g, y.cast<D1>()));
  }
  const double h = kFiniteDifferenceStep;
  return (a.cotangent_lift<double>(Vec(h * xi), y) - a.cotangent_lift<double>(Vec(-h * xi), y)) / (2 * h);
}

SmoothMap cosphere_action_map(const GroupActionSpec& a, const GroupElement& g) {
  const int n = a.ambient_dim();
  const Vec gc = g.coords;
  return SmoothMap(2 * n, 2 * n, [a, gc, n](const auto& y) {
    using V = std::decay_t<decltype(y)>;
    using S = typename V::Scalar;
    V out = a.template cotangent_lift<S>(gc.template cast<S>(), y);
    const V p = out.tail(n);
    out.tail(n) = p / norm(p);
    return out;
  });
}

LiftAndScale cosphere_lift_and_scale(const GroupActionSpec& a, const GroupElement& g, const CospherePoint& s,
                                     const SectionSigma& sigma) {
  const CotangentPoint moved = cotangent_lift(a, g, s.rep);
  return {cosphere_class(moved), sigma.f(moved.p) / sigma.f(s.rep.p)};
}

double scale_identity_residual(const ManifoldSpec& q, const GroupActionSpec& a, const GroupElement& g,
                               const CospherePoint& s, const SectionSigma& sigma, const Vec& w) {
  const LiftAndScale ls = cosphere_lift_and_scale(a, g, s, sigma);
  const Vec pushed = cosphere_action_map(a, g).push_forward(s.coords(), w);
  const double lhs = theta_sigma_eval(q, sigma, ls.image, pushed);
  const double rhs = ls.scale * theta_sigma_eval(q, sigma, s, w);
  return std::abs(lhs - rhs);
}

double liouville_invariance_residual(const ManifoldSpec& q, const GroupActionSpec& a, const GroupElement& g,
                                     const CotangentPoint& alpha, const Vec& v) {
  const Vec gc = g.coords;
  const SmoothMap lift(2 * a.ambient_dim(), 2 * a.ambient_dim(), [a, gc](const auto& y) {
    using S = typename std::decay_t<decltype(y)>::Scalar;
    return a.template cotangent_lift<S>(gc.template cast<S>(), y);
  });
  const CotangentPoint moved = cotangent_lift(a, g, alpha);
  const double lhs = liouville_eval(q, moved, lift.push_forward(alpha.coords(), v));
  return std::abs(lhs - liouville_eval(q, alpha, v));
}

double J_ct(const GroupActionSpec& a, const CotangentPoint& alpha, const Vec& xi) {
  return alpha.p.dot(fundamental_field(a, xi, alpha.base.coords));
}

Vec J_ct(const GroupActionSpec& a, const CotangentPoint& alpha) {
  const int k = a.algebra_dim();
  Vec out(k);
  for (int i = 0; i < k; ++i) out[i] = J_ct(a, alpha, Vec::Unit(k, i));
  return out;
}

double J_cosphere(const ManifoldSpec& q, const GroupActionSpec& a, const CospherePoint& s, const Vec& xi,
                  const SectionSigma& sigma) {
  return theta_sigma_eval(q, sigma, s, lifted_fundamental_field(a, xi, s.coords()));
}

double J_cosphere_via_representative(const GroupActionSpec& a, const CotangentPoint& alpha, const Vec& xi,
                                     const SectionSigma& sigma) {
  return f_sigma(sigma, alpha) * J_ct(a, alpha, xi);
}

Vec momentum_gradient(const GroupActionSpec& a, const Vec& xi, const Vec& y, const SectionSigma& sigma,
                      Backend backend) {
  const int n = a.ambient_dim();
  const double c = sigma.scale();
  auto pairing = [&](const auto& yy) {
    using V = std::decay_t<decltype(yy)>;
    using S = typename V::Scalar;
    return c * dot(V(yy.tail(n)), a.template fundamental_field<S>(xi.template cast<S>(), V(yy.head(n))));
  };
  Vec grad(2 * n);
  if (backend == Backend::Dual) {
    VecT<D1> yd = y.cast<D1>();
    for (int j = 0; j < 2 * n; ++j) {
      yd[j].der = 1.0;
      grad[j] = pairing(yd).der;
      yd[j].der = 0.0;
    }
  } else {
    const double h = kFiniteDifferenceStep;
    for (int j = 0; j < 2 * n; ++j) {
      Vec yp = y;
      Vec ym = y;
      yp[j] += h;
      ym[j] -= h;
      grad[j] = (pairing(yp) - pairing(ym)) / (2 * h);
    }
  }
  return grad;
}

BifurcationReport bifurcation_check(const ManifoldSpec& q, const GroupActionSpec& a, const CospherePoint& s,
                                    const SectionSigma& sigma, Backend backend) {
  BifurcationReport rep;
  const int k = a.algebra_dim();
  rep.algebra_dim = k;
  if (k == 0) return rep;
  const ManifoldSpec bundle = ManifoldSpec::cosphere_bundle(q);
  const Vec y = s.coords();
  const Mat frame = tangent_frame(bundle, y);
  const OneFormField theta = theta_sigma_form(q, sigma);
  const Eigen::Index d = frame.cols();
  Mat tj(k, d);
  Mat deg(k, d);
  for (int i = 0; i < k; ++i) {
    const Vec xi = Vec::Unit(k, i);
    const Vec grad = momentum_gradient(a, xi, y, sigma, backend);
    const Vec xn = lifted_fundamental_field(a, xi, y, backend);
    for (Eigen::Index j = 0; j < d; ++j) {
      tj(i, j) = grad.dot(frame.col(j));
      deg(i, j) = d_eval(theta, y, xn, frame.col(j), backend);
      rep.pairing_residual = std::max(rep.pairing_residual, std::abs(tj(i, j) + deg(i, j)));
    }
  }
  rep.image_rank = numerical_rank(tj);
  rep.degenerate_dim = k - numerical_rank(deg);
  return rep;
}

double torus_average_residual(const ManifoldSpec& q, const GroupActionSpec& a, const CospherePoint& s,
                              const SectionSigma& sigma, const std::vector<Vec>& probes, int nodes) {
  if (a.family() != ActionFamily::TorusRotation && a.family() != ActionFamily::CircleOnS3)
    throw GeometryError("torus_average_residual: action is not a torus action");
  if (nodes < 1) throw GeometryError("torus_average_residual: need at least one node");
  const int r = a.group_dim();
  // Rank-1 lattice rule on [0, 2 pi)^r (uniform grid when r = 1).
  static constexpr int kGenerator[] = {1, 19, 27, 41, 53, 7, 11, 13, 17};
  std::vector<GroupElement> elems;
  for (int i = 0; i < nodes; ++i) {
    Vec g(r);
    for (int j = 0; j < r; ++j) {
      const double frac = std::fmod(static_cast<double>(i) * kGenerator[j % 9] / nodes, 1.0);
      g[j] = 2.0 * M_PI * frac;
    }
    elems.push_back({g});
  }
  double worst = 0.0;
  for (const Vec& w : probes) {
    double avg = 0.0;
    for (const auto& g : elems) {
      const LiftAndScale ls = cosphere_lift_and_scale(a, g, s, sigma);
      const Vec pushed = cosphere_action_map(a, g).push_forward(s.coords(), w);
      avg += theta_sigma_eval(q, sigma, ls.image, pushed);
    }
    avg /= nodes;
    worst = std::max(worst, std::abs(avg - theta_sigma_eval(q, sigma, s, w)));
  }
  return worst;
}

}  // namespace contactred
