#include "contactred/forms.hpp"

#include <numeric>

#include <Eigen/LU>

#include "contactred/error.hpp"

namespace contactred {

Vec OneFormField::coefficients(const Vec& y, const Mat& frame) const {
  Vec out(frame.cols());
  for (Eigen::Index j = 0; j < frame.cols(); ++j) out[j] = f0_(y, frame.col(j));
  return out;
}

double OneFormField::operator()(const Point& q, const TangentVector& v) const {
  require_on_manifold(carrier_, q.coords);
  return f0_(q.coords, tangent_projector(carrier_, q.coords) * v.dir);
}

namespace {

double d_eval_dual(const OneFormField& omega, const Vec& q, const Vec& x, const Vec& y) {
  const ManifoldSpec& m = omega.carrier();
  const Eigen::Index n = q.size();
  VecT<D2> qd(n);
  VecT<D2> u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    qd[i] = D2(D1(q[i]));
    // Inner derivative tracks t (direction y), outer derivative tracks s (x).
    u[i] = D2(D1(0.0, y[i]), D1(x[i], 0.0));
  }
  const VecT<D2> c = m.retract<D2>(qd, u);
  VecT<D1> point_s(n), vec_t(n), point_t(n), vec_s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    point_s[i] = D1(c[i].val.val, c[i].der.val);
    vec_t[i] = D1(c[i].val.der, c[i].der.der);
    point_t[i] = D1(c[i].val.val, c[i].val.der);
    vec_s[i] = D1(c[i].der.val, c[i].der.der);
  }
  const double ds_at = omega.eval<D1>(point_s, vec_t).der;
  const double dt_as = omega.eval<D1>(point_t, vec_s).der;
  return ds_at - dt_as;
}

double d_eval_fd(const OneFormField& omega, const Vec& q, const Vec& x, const Vec& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return 0.0;
  const Vec xu = x / nx;
  const Vec yu = y / ny;
  const ManifoldSpec& m = omega.carrier();
  constexpr double kInner = 1e-4;
  constexpr double kOuter = 1e-4;
  auto chart = [&](double s, double t) -> Vec { return m.retract<double>(q, Vec(s * xu + t * yu)); };
  // omega(c(s, 0))(dc/dt) and omega(c(0, t))(dc/ds), tangents by central differences.
  auto a_t = [&](double s) {
    const Vec tangent = (chart(s, kInner) - chart(s, -kInner)) / (2 * kInner);
    return omega(chart(s, 0.0), tangent);
  };
  auto a_s = [&](double t) {
    const Vec tangent = (chart(kInner, t) - chart(-kInner, t)) / (2 * kInner);
    return omega(chart(0.0, t), tangent);
  };
  const double ds_at = (a_t(kOuter) - a_t(-kOuter)) / (2 * kOuter);
  const double dt_as = (a_s(kOuter) - a_s(-kOuter)) / (2 * kOuter);
  return nx * ny * (ds_at - dt_as);
}

}  // namespace

double d_eval(const OneFormField& omega, const Vec& q, const Vec& x, const Vec& y, Backend backend) {
  const int n = omega.carrier().ambient_dim();
  if (q.size() != n || x.size() != n || y.size() != n)
    throw GeometryError("d_eval: size mismatch with carrier " + omega.carrier().name());
  return backend == Backend::Dual ? d_eval_dual(omega, q, x, y) : d_eval_fd(omega, q, x, y);
}

double d_eval(const OneFormField& omega, const Point& q, const TangentVector& x,
              const TangentVector& y, Backend backend) {
  require_on_manifold(omega.carrier(), q.coords);
  require_tangent(omega.carrier(), q.coords, x.dir);
  require_tangent(omega.carrier(), q.coords, y.dir);
  return d_eval(omega, q.coords, x.dir, y.dir, backend);
}

Mat d_matrix(const OneFormField& omega, const Vec& q, const Mat& frame, Backend backend) {
  const Eigen::Index m = frame.cols();
  Mat out = Mat::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      out(i, j) = d_eval(omega, q, frame.col(i), frame.col(j), backend);
      out(j, i) = -out(i, j);
    }
  return out;
}

double top_form_from_coefficients(const Vec& eta_coeff, const Mat& d_eta) {
  const int m = static_cast<int>(eta_coeff.size());
  const int n = (m - 1) / 2;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  auto term = [&]() {
    double t = eta_coeff[perm[0]];
    for (int i = 0; i < n; ++i) t *= d_eta(perm[2 * i + 1], perm[2 * i + 2]);
    return t;
  };
  // Heap's algorithm; every swap flips the permutation parity.
  double sum = term();
  double sign = 1.0;
  std::vector<int> counter(m, 0);
  int i = 1;
  while (i < m) {
    if (counter[i] < i) {
      if (i % 2 == 0) std::swap(perm[0], perm[i]);
      else std::swap(perm[counter[i]], perm[i]);
      sign = -sign;
      sum += sign * term();
      ++counter[i];
      i = 1;
    } else {
      counter[i] = 0;
      ++i;
    }
  }
  return sum / static_cast<double>(1 << n);
}

double contact_volume(const OneFormField& eta, const Vec& q, const Mat& frame, Backend backend) {
  const int dim = eta.carrier().intrinsic_dim();
  if (dim % 2 == 0) throw GeometryError("contact_volume: carrier has even dimension");
  if (dim > kMaxTopFormDim) throw GeometryError("contact_volume: dimension above permutation-sum cap");
  if (frame.cols() != dim || frame.rows() != eta.carrier().ambient_dim())
    throw GeometryError("contact_volume: frame must hold intrinsic_dim ambient vectors");
  const double gram = (frame.transpose() * frame).determinant();
  if (!(gram >= 1e-12)) throw GeometryError("contact_volume: dependent frame");
  return top_form_from_coefficients(eta.coefficients(q, frame), d_matrix(eta, q, frame, backend));
}

double contact_volume(const OneFormField& eta, const Point& q, const std::vector<TangentVector>& frame) {
  require_on_manifold(eta.carrier(), q.coords);
  Mat f(eta.carrier().ambient_dim(), static_cast<Eigen::Index>(frame.size()));
  for (std::size_t j = 0; j < frame.size(); ++j) {
    require_tangent(eta.carrier(), q.coords, frame[j].dir);
    f.col(static_cast<Eigen::Index>(j)) = frame[j].dir;
  }
  return contact_volume(eta, q.coords, f);
}

Vec reeb_vector(const OneFormField& eta, const Vec& q, Backend backend) {
  const ManifoldSpec& m = eta.carrier();
  const Mat frame = tangent_frame(m, q);
  const Eigen::Index k = frame.cols();
  Mat system(k + 1, k);
  system.row(0) = eta.coefficients(q, frame).transpose();
  // Row i+1: d(eta)(R, e_i) = sum_j r_j d(eta)(e_j, e_i).
  system.bottomRows(k) = d_matrix(eta, q, frame, backend).transpose();
  Vec rhs = Vec::Zero(k + 1);
  rhs[0] = 1.0;
  Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().minCoeff() < kRankCutoff)
    throw GeometryError("reeb_vector: singular system, form is not contact at this point");
  const Vec r = svd.solve(rhs);
  return frame * r;
}

TangentVector reeb_vector(const OneFormField& eta, const Point& q) {
  require_on_manifold(eta.carrier(), q.coords);
  return {q, reeb_vector(eta, q.coords)};
}

ReebResiduals reeb_residuals(const OneFormField& eta, const Vec& q, const Vec& reeb) {
  const Mat frame = tangent_frame(eta.carrier(), q);
  ReebResiduals out;
  out.eta_minus_one = std::abs(eta(q, reeb) - 1.0);
  for (Eigen::Index i = 0; i < frame.cols(); ++i)
    out.max_d_eta = std::max(out.max_d_eta, std::abs(d_eval(eta, q, reeb, frame.col(i))));
  return out;
}

}  // namespace contactred
