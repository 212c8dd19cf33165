#include <algorithm>
#include <map>

#include "contactred/error.hpp"
#include "contactred/reduction.hpp"

namespace contactred {

namespace {

// Hamilton product of quaternions stored as (1, i, j, k).
template <class T>
VecT<T> quaternion_product(const VecT<T>& a, const VecT<T>& b) {
  VecT<T> out(4);
  out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
  out[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
  out[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
  out[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
  return out;
}

ReductionScenario base_scenario(std::string name, int n, ManifoldSpec q, GroupActionSpec a, Vec mu,
                                ManifoldSpec quotient, SmoothMap f) {
  return ReductionScenario{std::move(name), n, std::move(q), std::move(a), std::move(mu),
                           std::move(quotient), std::move(f)};
}

ReductionScenario paral1(int n) {
  const int drop = 2;
  const int out = 2 * (n - 1);
  SmoothMap f(2 * n, out, [drop, out](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    return V(x.segment(drop, out));
  });
  ReductionScenario s = base_scenario("paral1", n, ManifoldSpec::torus(n),
                                      GroupActionSpec::torus_rotation(2 * n, {0}), Vec::Zero(1),
                                      ManifoldSpec::torus(n - 1), std::move(f));
  s.expected_reduced_dim = 2 * (n - 1) - 1;
  return s;
}

ReductionScenario paral2(int n) {
  SmoothMap f(n, 2 * n, [n](const auto& x) {
    using std::cos;
    using std::sin;
    using V = std::decay_t<decltype(x)>;
    V out(2 * n);
    for (int i = 0; i < n; ++i) {
      out[2 * i] = cos(x[i]);
      out[2 * i + 1] = sin(x[i]);
    }
    return out;
  });
  ReductionScenario s = base_scenario(
      "paral2", n, ManifoldSpec::euclidean(n), GroupActionSpec::discrete_lattice(2.0 * M_PI * Mat::Identity(n, n)),
      Vec(0), ManifoldSpec::torus(n), std::move(f));
  s.expected_reduced_dim = 2 * n - 1;
  s.unit_factor = true;
  return s;
}

ReductionScenario paral3() {
  // Hopf map: the imaginary part of conj(q) i q.
  SmoothMap f(4, 3, [](const auto& q) {
    using V = std::decay_t<decltype(q)>;
    V conj = -q;
    conj[0] = q[0];
    const V r = quaternion_product(conj, detail::quaternion_i_times(q));
    return V(r.tail(3));
  });
  ReductionScenario s = base_scenario("paral3", 1, ManifoldSpec::sphere(3), GroupActionSpec::circle_on_s3(),
                                      Vec::Zero(1), ManifoldSpec::sphere(2), std::move(f));
  s.expected_reduced_dim = 3;
  return s;
}

ReductionScenario albert_torus(int n) {
  std::vector<int> circles(n);
  for (int b = 0; b < n; ++b) circles[b] = 2 * b;
  SmoothMap f(2 * n, 2, [n](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    return V(x.segment(2 * n - 2, 2));
  });
  ReductionScenario s = base_scenario("albert_torus", n, ManifoldSpec::torus(n),
                                      GroupActionSpec::torus_rotation(2 * n, circles), Vec::Unit(n, n - 1),
                                      ManifoldSpec::torus(1), std::move(f));
  s.expected_reduced_dim = 1;
  return s;
}

Vec momentum_direction() { return (Vec(3) << 1.0, 2.0, 2.0).finished(); }

ReductionScenario linear_momentum(int n) {
  const int dim = 3 * (n + 1);
  Mat gens(dim, 3);
  for (int b = 0; b <= n; ++b) gens.block(3 * b, 0, 3, 3) = Mat::Identity(3, 3);
  const Vec v = momentum_direction();
  const Vec w = v / v.squaredNorm();
  SmoothMap f(dim, 3 * n + 1, [n, w](const auto& q) {
    using V = std::decay_t<decltype(q)>;
    using S = typename V::Scalar;
    V out(3 * n + 1);
    for (int i = 0; i < n; ++i) out.segment(3 * i, 3) = q.segment(3 * (i + 1), 3) - q.segment(3 * i, 3);
    out[3 * n] = dot<S>(V(q.head(3)), w.template cast<S>());
    return out;
  });
  ReductionScenario s =
      base_scenario("linear_momentum", n, ManifoldSpec::euclidean(dim), GroupActionSpec::translations(gens), v,
                    ManifoldSpec::euclidean(3 * n + 1), std::move(f));
  s.expected_reduced_dim = 6 * n + 1;
  return s;
}

struct Entry {
  int default_n;
  int min_n;
  int max_n;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"albert_torus", {2, 2, 8}}, {"linear_momentum", {1, 1, 4}}, {"paral1", {3, 2, 8}},
      {"paral2", {3, 1, 8}},       {"paral3", {1, 1, 1}},
  };
  return r;
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& [name, e] : registry()) out.push_back(name);
  return out;
}

bool is_scenario(const std::string& name) { return registry().count(name) != 0; }

int default_size(const std::string& name) {
  if (!is_scenario(name)) throw GeometryError("unknown scenario: " + name);
  return registry().at(name).default_n;
}

std::pair<int, int> size_range(const std::string& name) {
  if (!is_scenario(name)) throw GeometryError("unknown scenario: " + name);
  const Entry& e = registry().at(name);
  return {e.min_n, e.max_n};
}

ReductionScenario make_scenario(const std::string& name, int n) {
  if (!is_scenario(name)) throw GeometryError("unknown scenario: " + name);
  if (name == "paral3") return paral3();
  const auto [lo, hi] = size_range(name);
  if (n < lo || n > hi) throw GeometryError("size parameter out of range for " + name);
  if (name == "paral1") return paral1(n);
  if (name == "paral2") return paral2(n);
  if (name == "albert_torus") return albert_torus(n);
  return linear_momentum(n);
}

ReductionScenario make_scenario(const std::string& name) { return make_scenario(name, default_size(name)); }

}  // namespace contactred
