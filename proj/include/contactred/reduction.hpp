#pragma once

// Contact reduction of cosphere bundles, verified upstairs: level-set
// samplers, the reduced maps at zero and along a ray, the kernel group of a
// momentum value, and the scenario registry.

#include <cstdint>
#include <string>
#include <vector>

#include "contactred/actions.hpp"

namespace contactred {

inline constexpr double kFactorMargin = 1e-6;

struct ReductionScenario {
  std::string name;
  int n = 1;
  ManifoldSpec q;
  GroupActionSpec action;
  Vec mu;  ///< momentum value in the dual basis (empty for algebra_dim 0)
  ManifoldSpec quotient;
  SmoothMap quotient_map;
  SectionSigma sigma = SectionSigma::metric();
  SectionSigma big_sigma = SectionSigma::metric();
  int expected_reduced_dim = 0;
  bool unit_factor = false;  ///< the quotient map is a local isometry
  int samples = 64;
  int probes = 8;
  double tol = 1e-9;
  std::uint64_t seed = 42;

  bool zero_momentum() const { return mu.size() == 0 || mu.norm() == 0.0; }
  /// G for reduction at zero, K_mu otherwise.
  GroupActionSpec reduction_group() const;
};

std::vector<std::string> scenario_names();
bool is_scenario(const std::string& name);
int default_size(const std::string& name);
/// Smallest and largest accepted size parameter.
std::pair<int, int> size_range(const std::string& name);
/// Builds a registered scenario; throws GeometryError for unknown names or
/// sizes out of range. Scenarios without a size parameter ignore n.
ReductionScenario make_scenario(const std::string& name, int n);
ReductionScenario make_scenario(const std::string& name);

struct KernelAlgebra {
  Mat basis;       ///< orthonormal columns spanning ker mu
  bool condition;  ///< dim(ker mu + g_mu) == dim g
};

/// Kernel of mu for an abelian action (g_mu = g). Deterministic basis from
/// pivoted Gram-Schmidt of the coordinate directions projected onto mu^perp.
KernelAlgebra kernel_algebra(const GroupActionSpec& a, const Vec& mu);

/// Unit covectors on J^{-1}(0) (mu = 0) or J^{-1}(R_+ mu).
std::vector<CospherePoint> sample_level(const ReductionScenario& s, int count, Rng& rng);

/// Distance of s from the scenario's level set: max |<J, beta>| over beta
/// annihilating mu, plus a penalty when the ray coefficient is not positive.
double level_residual(const ReductionScenario& s, const CospherePoint& pt);

/// Reduced covector at quotient_map(x) with <P, Df v> = <p, v> for all
/// tangent v, computed by pairing p with horizontal lifts (the metric
/// complement of the reduction group's orbit directions). Works for any
/// representative; returns the T*(quotient) coordinates (x', P).
Vec reduced_covector(const ReductionScenario& s, const GroupActionSpec& group, const Vec& y);

/// The same covector through P = M^{-1} A p with A = Df P_Q and
/// M = A A^T + (I - P_{Q'}), which is smooth in y and differentiable with
/// dual numbers. Returns (x', P / |P|) in S*(quotient) coordinates.
template <class T>
VecT<T> reduced_point(const ReductionScenario& s, const VecT<T>& y);

/// phi_0: requires s on J^{-1}(0) for `group` (defaults to the scenario group).
CospherePoint phi0_reduced(const ReductionScenario& s, const CospherePoint& pt);
CospherePoint phi0_reduced(const ReductionScenario& s, const GroupActionSpec& group, const CospherePoint& pt);
/// psi_mu: requires s on J^{-1}(R_+ mu); reduces by K_mu.
CospherePoint psi_mu_reduced(const ReductionScenario& s, const CospherePoint& pt);

/// F = f_Sigma(reduced(alpha)) / f_sigma(alpha) at the representative y.
double reduction_factor(const ReductionScenario& s, const Vec& y);

/// Level-set tangent vectors: null space of the bundle constraints stacked
/// with the momentum components that must vanish. `cosphere` selects S*Q
/// (unit p) over T*Q.
Mat level_tangent_basis(const ReductionScenario& s, const Vec& y, bool cosphere);

struct IdentitySample {
  double lhs = 0.0;
  double rhs = 0.0;
  double factor = 0.0;
  double residual() const { return std::abs(lhs - factor * rhs); }
};

/// (reduced map)^* Theta_Sigma (V) against F * (pi^* theta_sigma)(V) at a
/// T*Q representative y on the level set, V tangent to the level set.
IdentitySample reduction_identity(const ReductionScenario& s, const Vec& y, const Vec& v,
                                  Backend backend = Backend::Dual);

struct DimensionAudit {
  int level_dim = 0;
  int orbit_dim = 0;
  int reduced_dim = 0;
  int expected_reduced_dim = 0;
  bool stable = true;  ///< identical ranks at every sample
  bool matches() const { return stable && reduced_dim == expected_reduced_dim; }
};

DimensionAudit dimension_audit(const ReductionScenario& s, const std::vector<CospherePoint>& pts);

struct InjectivityReport {
  int pairs = 0;
  int collisions = 0;                 ///< distinct classes with equal images
  double same_class_max_distance = 0.0;
};

InjectivityReport injectivity_check(const ReductionScenario& s, int pairs, Rng& rng);

// ---------------------------------------------------------------------------

namespace detail {

inline Mat map_jacobian(const SmoothMap& f, const Vec& x) { return f.jacobian(x); }
inline MatT<D1> map_jacobian(const SmoothMap& f, const VecT<D1>& x) { return f.jacobian(x); }

template <class T>
MatT<T> base_projector(const ManifoldSpec& m, const VecT<T>& x) {
  const Eigen::Index n = x.size();
  MatT<T> out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) out.col(j) = m.project_base<T>(x, VecT<T>(VecT<T>::Unit(n, j)));
  return out;
}

}  // namespace detail

template <class T>
VecT<T> reduced_point(const ReductionScenario& s, const VecT<T>& y) {
  const int n = s.q.ambient_dim();
  const int m = s.quotient.ambient_dim();
  const VecT<T> x = y.head(n);
  const VecT<T> p = y.tail(n);
  const VecT<T> xq = s.quotient_map.apply<T>(x);
  const MatT<T> a = detail::map_jacobian(s.quotient_map, x) * detail::base_projector<T>(s.q, x);
  const MatT<T> mm = a * a.transpose() + (MatT<T>::Identity(m, m) - detail::base_projector<T>(s.quotient, xq));
  const VecT<T> pq = solve_square<T>(mm, VecT<T>(a * p));
  VecT<T> out(2 * m);
  out.head(m) = xq;
  out.tail(m) = pq / norm(pq);
  return out;
}

}  // namespace contactred
