#include "contactred/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <string_view>

#include <json.hpp>

#include "contactred/error.hpp"

namespace contactred {

namespace {

// Library tolerances at the default run tolerance of 1e-9.
constexpr double kTolSection = 1e-9;
constexpr double kTolHomogeneity = 1e-12;
constexpr double kTolReeb = 1e-9;
constexpr double kTolBackend = 1e-6;
constexpr double kTolAction = 1e-12;
constexpr double kTolExact = 1e-15;
constexpr double kTolFlow = 1e-6;
constexpr double kTolInvariance = 1e-9;
constexpr double kTolAverage = 1e-8;
constexpr double kTolCone = 1e-8;
constexpr double kTolQuotient = 1e-10;
constexpr double kTolAngle = 1e-8;
constexpr double kTolLevel = 1e-10;
constexpr double kTolIdentity = 1e-8;
constexpr double kTolIdentityFd = 1e-6;
constexpr double kTolUnitFactor = 1e-10;
constexpr double kVolumeMargin = 1e-3;
constexpr double kFreenessMargin = 1e-6;

constexpr int kTriples = 50;
constexpr int kConePairs = 50;
constexpr int kInjectivityPairs = 200;
constexpr int kBackendSpots = 20;

std::uint64_t fnv1a(std::string_view text, std::uint64_t h) {
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Check {
 public:
  Check(std::string name, double tol, std::optional<double> margin = std::nullopt)
      : name_(std::move(name)), tol_(tol), margin_(margin) {}

  const std::string& name() const { return name_; }

  void residual(double r) {
    ++samples_;
    if (!std::isfinite(r)) bad_ = true;
    else max_ = std::max(max_, r);
  }
  void factor(double f) {
    if (!std::isfinite(f)) bad_ = true;
    min_ = min_ ? std::min(*min_, f) : f;
  }
  void fail() { bad_ = true; }
  /// Counts evaluations summarized by a single residual.
  void add_samples(int k) { samples_ += k; }

  CheckResult result() const {
    CheckResult r;
    r.name = name_;
    r.samples = samples_;
    r.max_residual = bad_ && max_ == 0.0 ? std::nan("") : max_;
    r.min_factor = min_;
    r.pass = !bad_ && samples_ > 0 && max_ <= tol_ && (!margin_ || (min_ && *min_ >= *margin_));
    return r;
  }

 private:
  std::string name_;
  double tol_;
  std::optional<double> margin_;
  int samples_ = 0;
  double max_ = 0.0;
  std::optional<double> min_;
  bool bad_ = false;
};

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec gaussian(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

CotangentPoint scaled(const CospherePoint& pt, double r) { return {pt.rep.base, r * pt.rep.p}; }

class Suite {
 public:
  explicit Suite(const ReductionScenario& s)
      : s_(s),
        tq_(ManifoldSpec::cotangent_bundle(s.q)),
        sq_(ManifoldSpec::cosphere_bundle(s.q)),
        qsq_(ManifoldSpec::cosphere_bundle(s.quotient)),
        red_(s.reduction_group()),
        scale_(s.tol / 1e-9),
        theta_(theta_sigma_form(s.q, s.sigma)),
        big_theta_(theta_sigma_form(s.quotient, s.big_sigma)) {
    Rng rng = rng_for("points");
    for (int i = 0; i < s.samples; ++i) generic_.push_back(cosphere_point_from_coords(s.q, sample_point(sq_, rng).coords));
    try {
      Rng lrng = rng_for("level");
      level_ = sample_level(s, s.samples, lrng);
    } catch (const std::exception& e) {
      level_error_ = e.what();
    }
  }

  ScenarioReport run() {
    ScenarioReport rep;
    rep.name = s_.name;
    rep.n = s_.n;
    section_checks();
    action_checks();
    momentum_checks();
    quotient_checks();
    reduction_checks();
    if (!s_.zero_momentum()) mu_checks();
    audit(rep);
    std::sort(out_.begin(), out_.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    rep.checks = std::move(out_);
    return rep;
  }

 private:
  Rng rng_for(std::string_view check) const {
    return Rng(fnv1a(check, fnv1a(s_.name, 1469598103934665603ull ^ s_.seed)));
  }

  void run(const std::string& name, double tol, std::optional<double> margin,
           const std::function<void(Check&, Rng&)>& body) {
    Check c(name, tol * scale_, margin);
    Rng rng = rng_for(name);
    std::string error;
    try {
      body(c, rng);
    } catch (const std::exception& e) {
      c.fail();
      error = e.what();
    }
    CheckResult r = c.result();
    r.error = error;
    out_.push_back(std::move(r));
  }

  const std::vector<CospherePoint>& level() const {
    if (level_.empty()) throw GeometryError("level set sampling failed: " + level_error_);
    return level_;
  }

  GroupElement red_element(Rng& rng) const { return red_.sample_element(rng); }

  CospherePoint reduce(const CospherePoint& pt) const {
    return s_.zero_momentum() ? phi0_reduced(s_, pt) : psi_mu_reduced(s_, pt);
  }

  // -- sections, contact structure, backends ---------------------------------

  void section_checks() {
    run("section_identity", kTolSection, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : generic_) {
        const CotangentPoint alpha = scaled(pt, uniform(rng, 0.5, 2.0));
        for (int k = 0; k < s_.probes; ++k)
          c.residual(pullback_relation_residual(s_.q, s_.sigma, alpha, sample_tangent(tq_, alpha.coords(), rng)));
      }
    });
    run("section_homogeneity", kTolHomogeneity, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : generic_)
        for (double r : {0.5, 2.0, 10.0}) {
          const double f1 = f_sigma(s_.sigma, pt.rep);
          c.residual(std::abs(f_sigma(s_.sigma, scaled(pt, r)) - f1 / r));
        }
    });
    if (sq_.intrinsic_dim() <= kMaxTopFormDim) {
      run("contact_volume", 0.0, kVolumeMargin, [&](Check& c, Rng&) {
        for (const auto& pt : generic_) {
          const Vec y = pt.coords();
          c.residual(0.0);
          c.factor(std::abs(contact_volume(theta_, y, tangent_frame(sq_, y))));
        }
      });
    }
    run("reeb_field", kTolReeb, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : generic_) {
        const Vec y = pt.coords();
        const ReebResiduals r = reeb_residuals(theta_, y, reeb_vector(theta_, y));
        c.residual(std::max(r.eta_minus_one, r.max_d_eta));
      }
    });
    run("backend_consistency", kTolBackend, std::nullopt, [&](Check& c, Rng& rng) {
      const int spots = std::min<int>(kBackendSpots, static_cast<int>(generic_.size()));
      for (int i = 0; i < spots; ++i) {
        const Vec y = generic_[i].coords();
        const Vec a = sample_tangent(sq_, y, rng);
        const Vec b = sample_tangent(sq_, y, rng);
        const double ad = d_eval(theta_, y, a, b, Backend::Dual);
        const double fd = d_eval(theta_, y, a, b, Backend::CentralDifference);
        c.residual(std::abs(ad - fd) / std::max(1.0, std::abs(ad)));
        const Mat jad = constraint_jacobian(sq_, y, Backend::Dual);
        const Mat jfd = constraint_jacobian(sq_, y, Backend::CentralDifference);
        c.residual((jad - jfd).cwiseAbs().maxCoeff() / std::max(1.0, jad.cwiseAbs().maxCoeff()));
        c.residual(std::abs(numerical_rank(jad) - numerical_rank(jfd)));
        const Vec rad = reeb_vector(theta_, y, Backend::Dual);
        const Vec rfd = reeb_vector(theta_, y, Backend::CentralDifference);
        c.residual((rad - rfd).norm() / std::max(1.0, rad.norm()));
      }
    });
    run("cone_symplectomorphism", kTolCone, std::nullopt, [&](Check& c, Rng& rng) {
      const int points = std::min<int>(s_.probes, static_cast<int>(generic_.size()));
      for (int i = 0; i < points; ++i) {
        const ConeCheckResult r = cone_check(s_.q, s_.sigma, generic_[i], uniform(rng, 0.5, 2.0), rng, kConePairs);
        c.add_samples(r.pairs - 1);
        c.residual(r.max_residual);
      }
    });
  }

  // -- actions and lifts --------------------------------------------------------

  void action_checks() {
    const GroupActionSpec& a = s_.action;
    run("action_identity", kTolAction, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : generic_) {
        const Vec& x = pt.rep.base.coords;
        c.residual((a.act(a.identity(), x) - x).norm());
      }
    });
    run("action_group_law", kTolAction, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : generic_) {
        const Vec& x = pt.rep.base.coords;
        const GroupElement g = a.sample_element(rng);
        const GroupElement h = a.sample_element(rng);
        c.residual((a.act(g, a.act(h, x)) - a.act(a.compose(g, h), x)).norm());
      }
    });
    if (a.algebra_dim() > 0) {
      run("fundamental_field_flow", kTolFlow, std::nullopt, [&](Check& c, Rng& rng) {
        const double h = kFiniteDifferenceStep;
        for (const auto& pt : generic_) {
          const Vec& x = pt.rep.base.coords;
          const Vec xi = gaussian(a.algebra_dim(), rng);
          const Vec field = fundamental_field(a, xi, x);
          const Vec flow = (a.act(a.exp(h * xi), x) - a.act(a.exp(-h * xi), x)) / (2 * h);
          c.residual((field - flow).norm());
          c.residual(tangent_residual(s_.q, x, field));
        }
      });
      run("action_freeness", 0.0, kFreenessMargin, [&](Check& c, Rng& rng) {
        for (const auto& pt : generic_) {
          Vec xi = gaussian(a.algebra_dim(), rng);
          xi /= xi.norm();
          c.residual(0.0);
          c.factor(fundamental_field(a, xi, pt.rep.base.coords).norm());
        }
      });
    }
    run("lift_liouville_invariance", kTolInvariance, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : generic_) {
        const CotangentPoint alpha = scaled(pt, uniform(rng, 0.5, 2.0));
        const GroupElement g = a.sample_element(rng);
        for (int k = 0; k < s_.probes; ++k)
          c.residual(liouville_invariance_residual(s_.q, a, g, alpha, sample_tangent(tq_, alpha.coords(), rng)));
      }
    });
    run("lift_base_equivariance", kTolExact, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : generic_) {
        const GroupElement g = a.sample_element(rng);
        c.residual((cotangent_lift(a, g, pt.rep).base.coords - a.act(g, pt.rep.base.coords)).norm());
      }
    });
    run("lift_norm_preservation", kTolAction, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : generic_) {
        const CotangentPoint alpha = scaled(pt, uniform(rng, 0.5, 2.0));
        const GroupElement g = a.sample_element(rng);
        c.residual(std::abs(cotangent_lift(a, g, alpha).p.norm() - alpha.p.norm()));
      }
    });
    run("scale_identity", kTolInvariance, kFactorMargin, [&](Check& c, Rng& rng) {
      for (int i = 0; i < kTriples; ++i) {
        const CospherePoint& pt = generic_[i % generic_.size()];
        const GroupElement g = a.sample_element(rng);
        const Vec w = sample_tangent(sq_, pt.coords(), rng);
        c.residual(scale_identity_residual(s_.q, a, g, pt, s_.sigma, w));
        c.factor(cosphere_lift_and_scale(a, g, pt, s_.sigma).scale);
      }
    });
    run("theta_sigma_invariance", kTolInvariance, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : generic_) {
        const GroupElement g = a.sample_element(rng);
        const LiftAndScale ls = cosphere_lift_and_scale(a, g, pt, s_.sigma);
        const SmoothMap phi = cosphere_action_map(a, g);
        for (int k = 0; k < s_.probes; ++k) {
          const Vec w = sample_tangent(sq_, pt.coords(), rng);
          const double moved = theta_sigma_eval(s_.q, s_.sigma, ls.image, phi.push_forward(pt.coords(), w));
          c.residual(std::abs(moved - theta_sigma_eval(s_.q, s_.sigma, pt, w)));
        }
      }
    });
    if (a.family() == ActionFamily::TorusRotation || a.family() == ActionFamily::CircleOnS3) {
      run("torus_average", kTolAverage, std::nullopt, [&](Check& c, Rng& rng) {
        for (const auto& pt : generic_) {
          std::vector<Vec> probes;
          for (int k = 0; k < s_.probes; ++k) probes.push_back(sample_tangent(sq_, pt.coords(), rng));
          c.residual(torus_average_residual(s_.q, a, pt, s_.sigma, probes));
        }
      });
    }
  }

  // -- momentum maps --------------------------------------------------------------

  void momentum_checks() {
    const GroupActionSpec& a = s_.action;
    const int k = a.algebra_dim();
    if (k > 0) {
      run("momentum_relation", kTolInvariance, std::nullopt, [&](Check& c, Rng& rng) {
        for (const auto& pt : generic_) {
          const CotangentPoint alpha = scaled(pt, uniform(rng, 0.5, 2.0));
          const Vec xi = gaussian(k, rng);
          c.residual(std::abs(J_cosphere(s_.q, a, pt, xi, s_.sigma) -
                              J_cosphere_via_representative(a, alpha, xi, s_.sigma)));
        }
      });
      run("momentum_representative_independence", kTolHomogeneity, std::nullopt, [&](Check& c, Rng& rng) {
        for (const auto& pt : generic_) {
          const CotangentPoint alpha = scaled(pt, uniform(rng, 0.5, 2.0));
          const CotangentPoint alpha3{alpha.base, 3.0 * alpha.p};
          const Vec xi = gaussian(k, rng);
          c.residual(std::abs(J_cosphere_via_representative(a, alpha, xi, s_.sigma) -
                              J_cosphere_via_representative(a, alpha3, xi, s_.sigma)));
        }
      });
      run("momentum_equivariance", kTolInvariance, std::nullopt, [&](Check& c, Rng& rng) {
        for (int i = 0; i < kTriples; ++i) {
          const CospherePoint& pt = generic_[i % generic_.size()];
          const GroupElement g = a.sample_element(rng);
          const CospherePoint moved = cosphere_lift_and_scale(a, g, pt, s_.sigma).image;
          const Vec xi = gaussian(k, rng);
          c.residual(std::abs(J_cosphere(s_.q, a, moved, xi, s_.sigma) - J_cosphere(s_.q, a, pt, xi, s_.sigma)));
        }
      });
    }
    run("bifurcation_identity", kTolInvariance, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : generic_) {
        const BifurcationReport r = bifurcation_check(s_.q, a, pt, s_.sigma);
        c.residual(std::max(r.pairing_residual, r.holds() ? 0.0 : 1.0));
      }
    });
  }

  // -- the quotient map -------------------------------------------------------------

  Mat orbit_basis(const Vec& x) const {
    const int r = red_.algebra_dim();
    Mat v(x.size(), r);
    for (int j = 0; j < r; ++j) v.col(j) = fundamental_field(red_, Vec::Unit(r, j), x);
    return orthonormal_span(v);
  }

  void quotient_checks() {
    run("quotient_invariance", kTolQuotient, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : generic_) {
        const Vec& x = pt.rep.base.coords;
        const GroupElement g = red_element(rng);
        c.residual((s_.quotient_map(red_.act(g, x)) - s_.quotient_map(x)).norm());
      }
    });
    run("quotient_rank", 0.0, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : generic_) {
        const Vec& x = pt.rep.base.coords;
        const Mat d = s_.quotient_map.jacobian(x) * tangent_frame(s_.q, x);
        c.residual(std::abs(numerical_rank(d) - s_.quotient.intrinsic_dim()));
      }
    });
    run("quotient_kernel", kTolAngle, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : generic_) {
        const Vec& x = pt.rep.base.coords;
        const Mat frame = tangent_frame(s_.q, x);
        const Mat kernel = frame * null_space(s_.quotient_map.jacobian(x) * frame);
        c.residual(max_principal_angle(kernel, orbit_basis(x)));
      }
    });
  }

  // -- reduction ----------------------------------------------------------------------

  void reduction_checks() {
    run("level_set", kTolLevel, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : level())
        c.residual(std::max(level_residual(s_, pt), constraint_residual(sq_, pt.coords())));
    });
    auto identity = [&](Backend backend) {
      return [this, backend](Check& c, Rng& rng) {
        for (const auto& pt : level()) {
          const Vec y = scaled(pt, uniform(rng, 0.5, 2.0)).coords();
          const Mat basis = level_tangent_basis(s_, y, false);
          for (int k = 0; k < s_.probes; ++k) {
            const IdentitySample r = reduction_identity(s_, y, Vec(basis * gaussian(basis.cols(), rng)), backend);
            c.residual(r.residual());
            c.factor(r.factor);
          }
        }
      };
    };
    run("reduction_identity", kTolIdentity, kFactorMargin, identity(Backend::Dual));
    run("reduction_identity_fd", kTolIdentityFd, kFactorMargin, identity(Backend::CentralDifference));
    run("factor_ray_invariance", kTolInvariance, kFactorMargin, [&](Check& c, Rng&) {
      for (const auto& pt : level()) {
        const double f1 = reduction_factor(s_, pt.coords());
        c.factor(f1);
        for (double r : {0.5, 2.0, 10.0}) c.residual(std::abs(reduction_factor(s_, scaled(pt, r).coords()) - f1));
      }
    });
    run("factor_group_invariance", kTolInvariance, kFactorMargin, [&](Check& c, Rng& rng) {
      for (const auto& pt : level()) {
        const CotangentPoint alpha = scaled(pt, uniform(rng, 0.5, 2.0));
        const CotangentPoint moved = cotangent_lift(red_, red_element(rng), alpha);
        const double f = reduction_factor(s_, alpha.coords());
        c.factor(f);
        c.residual(std::abs(reduction_factor(s_, moved.coords()) - f));
      }
    });
    if (s_.unit_factor) {
      run("unit_factor", kTolUnitFactor, std::nullopt, [&](Check& c, Rng& rng) {
        for (const auto& pt : level())
          c.residual(std::abs(reduction_factor(s_, scaled(pt, uniform(rng, 0.5, 2.0)).coords()) - 1.0));
      });
    }
    if (red_.algebra_dim() > 0) {
      run("basic_vertical", kTolInvariance, std::nullopt, [&](Check& c, Rng&) {
        const int r = red_.algebra_dim();
        for (const auto& pt : level())
          for (int j = 0; j < r; ++j)
            c.residual(std::abs(theta_sigma_eval(s_.q, s_.sigma, pt,
                                                 lifted_fundamental_field(red_, Vec::Unit(r, j), pt.coords()))));
      });
    }
    run("basic_invariance", kTolInvariance, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : level()) {
        const Vec y = pt.coords();
        const Mat basis = level_tangent_basis(s_, y, true);
        const GroupElement g = red_element(rng);
        const LiftAndScale ls = cosphere_lift_and_scale(red_, g, pt, s_.sigma);
        const SmoothMap phi = cosphere_action_map(red_, g);
        for (int k = 0; k < s_.probes; ++k) {
          const Vec w = basis * gaussian(basis.cols(), rng);
          const double moved = theta_sigma_eval(s_.q, s_.sigma, ls.image, phi.push_forward(y, w));
          c.residual(std::abs(moved - theta_sigma_eval(s_.q, s_.sigma, pt, w)));
        }
      }
    });
    run("reduced_well_defined", kTolInvariance, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : level()) {
        const CospherePoint moved = cosphere_lift_and_scale(red_, red_element(rng), pt, s_.sigma).image;
        c.residual((reduce(moved).coords() - reduce(pt).coords()).norm());
      }
    });
    run("reduced_map_routes", kTolIdentity, std::nullopt, [&](Check& c, Rng& rng) {
      for (const auto& pt : level()) {
        const Vec y = scaled(pt, uniform(rng, 0.5, 2.0)).coords();
        c.residual((reduce(pt).coords() - reduced_point<double>(s_, y)).norm());
      }
    });
    run("reduced_on_quotient", kTolLevel, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : level()) c.residual(constraint_residual(qsq_, reduce(pt).coords()));
    });
    if (qsq_.intrinsic_dim() <= kMaxTopFormDim) {
      run("reduced_contact_volume", 0.0, kVolumeMargin, [&](Check& c, Rng&) {
        for (const auto& pt : level()) {
          const Vec z = reduce(pt).coords();
          c.residual(0.0);
          c.factor(std::abs(contact_volume(big_theta_, z, tangent_frame(qsq_, z))));
        }
      });
    }
    run("reduced_reeb_field", kTolReeb, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : level()) {
        const Vec z = reduce(pt).coords();
        const ReebResiduals r = reeb_residuals(big_theta_, z, reeb_vector(big_theta_, z));
        c.residual(std::max(r.eta_minus_one, r.max_d_eta));
      }
    });
  }

  void mu_checks() {
    run("kernel_algebra", kTolAction, std::nullopt, [&](Check& c, Rng&) {
      const KernelAlgebra ka = kernel_algebra(s_.action, s_.mu);
      const auto r = ka.basis.cols();
      c.residual((s_.mu.transpose() * ka.basis).cwiseAbs().maxCoeff());
      c.residual((ka.basis.transpose() * ka.basis - Mat::Identity(r, r)).cwiseAbs().maxCoeff());
      if (!ka.condition || r != s_.action.algebra_dim() - 1) c.fail();
    });
    run("zero_consistency", kTolInvariance, std::nullopt, [&](Check& c, Rng&) {
      for (const auto& pt : level())
        c.residual((phi0_reduced(s_, red_, pt).coords() - psi_mu_reduced(s_, pt).coords()).norm());
    });
    run("injectivity", kTolInvariance, std::nullopt, [&](Check& c, Rng& rng) {
      const InjectivityReport r = injectivity_check(s_, kInjectivityPairs, rng);
      c.add_samples(r.pairs - 1);
      c.residual(r.same_class_max_distance);
      if (r.collisions > 0) c.fail();
    });
  }

  void audit(ScenarioReport& rep) {
    run("dimension_audit", 0.0, std::nullopt, [&](Check& c, Rng&) {
      rep.dimensions = dimension_audit(s_, level());
      c.add_samples(static_cast<int>(level().size()) - 1);
      c.residual(std::abs(rep.dimensions.reduced_dim - rep.dimensions.expected_reduced_dim) +
                 (rep.dimensions.stable ? 0 : 1));
    });
    rep.dimensions.expected_reduced_dim = s_.expected_reduced_dim;
  }

  const ReductionScenario& s_;
  ManifoldSpec tq_;
  ManifoldSpec sq_;
  ManifoldSpec qsq_;
  GroupActionSpec red_;
  double scale_;
  OneFormField theta_;
  OneFormField big_theta_;
  std::vector<CospherePoint> generic_;
  std::vector<CospherePoint> level_;
  std::string level_error_;
  std::vector<CheckResult> out_;
};

nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

bool ScenarioReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* ScenarioReport::find(const std::string& check) const {
  for (const auto& c : checks)
    if (c.name == check) return &c;
  return nullptr;
}

ScenarioReport run_scenario(const ReductionScenario& s) { return Suite(s).run(); }

std::vector<ReductionScenario> resolve(const RunConfig& config) {
  if (config.scenarios.empty()) throw ConfigError("no scenario names given");
  if (config.samples < 1) throw ConfigError("--samples must be at least 1");
  if (!(config.tol > 0.0) || !std::isfinite(config.tol)) throw ConfigError("--tol must be positive");
  std::vector<std::string> names;
  for (const auto& name : config.scenarios) {
    if (name == "all") {
      for (const auto& n : scenario_names()) names.push_back(n);
    } else if (is_scenario(name)) {
      names.push_back(name);
    } else {
      throw ConfigError("unknown scenario: " + name);
    }
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<ReductionScenario> out;
  for (const auto& name : names) {
    int n = default_size(name);
    if (config.n && name != "paral3") {
      const auto [lo, hi] = size_range(name);
      if (*config.n < lo || *config.n > hi)
        throw ConfigError("--n " + std::to_string(*config.n) + " is out of range for " + name + " (" +
                          std::to_string(lo) + ".." + std::to_string(hi) + ")");
      n = *config.n;
    }
    ReductionScenario s = make_scenario(name, n);
    s.samples = config.samples;
    s.tol = config.tol;
    s.seed = config.seed;
    out.push_back(std::move(s));
  }
  if (!config.out.empty()) {
    const std::filesystem::path parent = std::filesystem::absolute(config.out).parent_path();
    if (!std::filesystem::is_directory(parent)) throw ConfigError("output directory does not exist: " + parent.string());
  }
  return out;
}

bool VerificationReport::pass() const {
  return std::all_of(scenarios.begin(), scenarios.end(), [](const ScenarioReport& s) { return s.pass(); });
}

VerificationReport run_suite(const RunConfig& config) {
  VerificationReport rep;
  rep.config = config;
  for (const auto& s : resolve(config)) rep.scenarios.push_back(run_scenario(s));
  return rep;
}

std::string to_json(const VerificationReport& report) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  json cfg;
  json names = json::array();
  for (const auto& s : report.scenarios) names.push_back(s.name);
  cfg["scenarios"] = names;
  cfg["n"] = report.config.n ? json(*report.config.n) : json(nullptr);
  cfg["samples"] = report.config.samples;
  cfg["tol"] = report.config.tol;
  cfg["seed"] = report.config.seed;
  doc["config"] = cfg;
  doc["pass"] = report.pass();
  json scenarios = json::array();
  for (const auto& s : report.scenarios) {
    json js;
    js["name"] = s.name;
    js["n"] = s.n;
    js["pass"] = s.pass();
    js["dimensions"] = {{"level_dim", s.dimensions.level_dim},
                        {"orbit_dim", s.dimensions.orbit_dim},
                        {"reduced_dim", s.dimensions.reduced_dim},
                        {"expected_reduced_dim", s.dimensions.expected_reduced_dim}};
    json checks = json::array();
    for (const auto& c : s.checks) {
      json jc;
      jc["name"] = c.name;
      jc["samples"] = c.samples;
      jc["max_residual"] = number_or_null(c.max_residual);
      jc["min_factor"] = c.min_factor ? number_or_null(*c.min_factor) : json(nullptr);
      jc["pass"] = c.pass;
      checks.push_back(jc);
    }
    js["checks"] = checks;
    scenarios.push_back(js);
  }
  doc["scenarios"] = scenarios;
  return doc.dump(2) + "\n";
}

int run_verify(const RunConfig& config, std::ostream& log) {
  std::vector<ReductionScenario> scenarios;
  try {
    scenarios = resolve(config);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
  VerificationReport rep;
  rep.config = config;
  for (const auto& s : scenarios) {
    rep.scenarios.push_back(run_scenario(s));
    const ScenarioReport& sr = rep.scenarios.back();
    const auto passed = std::count_if(sr.checks.begin(), sr.checks.end(), [](const auto& c) { return c.pass; });
    for (const auto& c : sr.checks) {
      if (config.quiet && c.pass) continue;
      log << "  " << (c.pass ? "ok   " : "FAIL ") << std::left << std::setw(40) << c.name << " samples "
          << std::setw(6) << c.samples << " max_residual " << std::scientific << std::setprecision(3)
          << c.max_residual;
      if (c.min_factor) log << " min_factor " << *c.min_factor;
      if (!c.error.empty()) log << " (" << c.error << ")";
      log << std::defaultfloat << "\n";
    }
    log << sr.name << " (n=" << sr.n << "): " << (sr.pass() ? "PASS" : "FAIL") << " " << passed << "/"
        << sr.checks.size() << " checks, reduced_dim " << sr.dimensions.reduced_dim << "\n";
  }
  if (!config.out.empty()) {
    std::ofstream f(config.out);
    f << to_json(rep);
    if (!f) {
      log << "error: could not write " << config.out << "\n";
      return 2;
    }
  }
  return rep.pass() ? 0 : 1;
}

}  // namespace contactred
