#include "pinch/curvature.hpp"

#include "pinch/errors.hpp"
#include "pinch/parallel.hpp"

#include <array>
#include <cmath>

namespace pinch {

namespace {

constexpr int kMaxDim = 129;

using Buf = std::array<double, kMaxDim>;

double dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Orthonormalizes (u, w) in place; returns the norm of w after removing its
// u component relative to |w| (0 for a collapsed pair).
double orthonormalize(double* u, double* w, int n) {
  const double nu = std::sqrt(dot(u, u, n));
  if (!(nu > 0)) return 0.0;
  for (int i = 0; i < n; ++i) u[i] /= nu;
  const double nw0 = std::sqrt(dot(w, w, n));
  if (!(nw0 > 0)) return 0.0;
  // Two passes of classical Gram-Schmidt for stability.
  for (int pass = 0; pass < 2; ++pass) {
    const double c = dot(u, w, n);
    for (int i = 0; i < n; ++i) w[i] -= c * u[i];
  }
  const double nw = std::sqrt(dot(w, w, n));
  if (!(nw > 0)) return 0.0;
  for (int i = 0; i < n; ++i) w[i] /= nw;
  return nw / nw0;
}

}  // namespace

TangentVector bracket(const TangentVector& x, const TangentVector& y, const BlockGenerator& a) {
  const Mat& m = a.dense();
  return {x.x0 * (m * y.xp) - y.x0 * (m * x.xp), 0.0};
}

Mat ad_matrix(const TangentVector& x, const BlockGenerator& a) {
  const int n = a.n();
  Mat ad = Mat::Zero(n + 1, n + 1);
  ad.topLeftCorner(n, n) = x.x0 * a.dense();
  ad.block(0, n, n, 1) = -(a.dense() * x.xp);
  return ad;
}

Mat ad_star(const TangentVector& x, const BlockGenerator& a) {
  return ad_matrix(x, a).transpose();
}

double curvature_numerator(const TangentVector& x, const TangentVector& y,
                           const BlockGenerator& a) {
  const Vec xs = x.stacked();
  const Vec ys = y.stacked();
  const Mat adx = ad_matrix(x, a);
  const Mat ady = ad_matrix(y, a);

  const Vec sym = adx.transpose() * ys + ady.transpose() * xs;
  const double t1 = 0.25 * sym.squaredNorm();
  const double t2 = (adx.transpose() * xs).dot(ady.transpose() * ys);
  const Vec xy = adx * ys;
  const double t3 = 0.75 * xy.squaredNorm();
  const Vec xyy = ad_matrix(TangentVector::from_stacked(xy), a) * ys;
  const double t4 = 0.5 * xyy.dot(xs);
  const Vec yx = ady * xs;
  const Vec yxx = ad_matrix(TangentVector::from_stacked(yx), a) * xs;
  const double t5 = 0.5 * yxx.dot(ys);
  return t1 - t2 - t3 - t4 - t5;
}

Plane Plane::orthonormalized(const Vec& u, const Vec& w) {
  if (u.size() != w.size()) throw InvalidArgument("plane", "vector sizes differ");
  const double nu = u.norm();
  if (!(nu > 0)) throw InvalidArgument("plane", "zero vector");
  Vec e1 = u / nu;
  Vec e2 = w - e1.dot(w) * e1;
  e2 -= e1.dot(e2) * e1;
  const double nw = e2.norm();
  if (!(nw > 1e-12 * w.norm()) || !(nw > 0)) {
    throw InvalidArgument("plane", "vectors are parallel");
  }
  return {e1, e2 / nw};
}

double sectional_curvature(const Plane& plane, const BlockGenerator& a) {
  const auto dim = static_cast<Eigen::Index>(a.n()) + 1;
  if (plane.u.size() != dim || plane.w.size() != dim) {
    throw InvalidArgument("curvature", "plane dimension does not match the group");
  }
  constexpr double tol = 1e-10;
  if (std::abs(plane.u.norm() - 1.0) > tol || std::abs(plane.w.norm() - 1.0) > tol ||
      std::abs(plane.u.dot(plane.w)) > tol) {
    throw InvalidArgument("curvature", "plane basis is not orthonormal");
  }
  return curvature_numerator(TangentVector::from_stacked(plane.u),
                             TangentVector::from_stacked(plane.w), a);
}

CurvatureModel::CurvatureModel(const BlockGenerator& a) : n_(a.n()) {
  if (n_ + 1 > kMaxDim) {
    throw InvalidArgument("curvature", "dimension " + std::to_string(n_) + " exceeds limit " +
                                           std::to_string(kMaxDim - 1));
  }
  int at = 0;
  for (const auto& b : a.blocks()) {
    blocks_.push_back({at, b.kind == GeneratorBlock::Kind::Rot2, b.lambda, b.phi});
    at += b.size();
  }
}

void CurvatureModel::apply(const double* in, double* out, bool transpose) const {
  for (const auto& b : blocks_) {
    if (b.rot2) {
      const double p = transpose ? -b.phi : b.phi;
      const double a0 = in[b.start];
      const double a1 = in[b.start + 1];
      out[b.start] = b.lambda * a0 + p * a1;
      out[b.start + 1] = -p * a0 + b.lambda * a1;
    } else {
      out[b.start] = b.lambda * in[b.start];
    }
  }
}

void CurvatureModel::bracket(const double* x, const double* y, double* out) const {
  Buf tmp{};
  const double x0 = x[n_];
  const double y0 = y[n_];
  for (int i = 0; i < n_; ++i) tmp[i] = x0 * y[i] - y0 * x[i];
  apply(tmp.data(), out, false);
  out[n_] = 0.0;
}

void CurvatureModel::ad_star(const double* x, const double* y, double* out) const {
  Buf ax;
  apply(x, ax.data(), false);
  apply(y, out, true);
  for (int i = 0; i < n_; ++i) out[i] *= x[n_];
  out[n_] = -dot(ax.data(), y, n_);
}

double CurvatureModel::numerator(const double* x, const double* y) const {
  const int dim = n_ + 1;
  Buf p, q, r, s, b, c, e;
  ad_star(x, y, p.data());
  ad_star(y, x, q.data());
  double t1 = 0.0;
  for (int i = 0; i < dim; ++i) t1 += (p[i] + q[i]) * (p[i] + q[i]);
  t1 *= 0.25;
  ad_star(x, x, r.data());
  ad_star(y, y, s.data());
  const double t2 = dot(r.data(), s.data(), dim);
  bracket(x, y, b.data());
  const double t3 = 0.75 * dot(b.data(), b.data(), dim);
  bracket(b.data(), y, c.data());
  const double t4 = 0.5 * dot(c.data(), x, dim);
  for (int i = 0; i < dim; ++i) b[i] = -b[i];  // [Y,X]
  bracket(b.data(), x, e.data());
  const double t5 = 0.5 * dot(e.data(), y, dim);
  return t1 - t2 - t3 - t4 - t5;
}

double CurvatureModel::sectional(const double* x, const double* y) const {
  const int dim = n_ + 1;
  const double xx = dot(x, x, dim);
  const double yy = dot(y, y, dim);
  const double xy = dot(x, y, dim);
  return numerator(x, y) / (xx * yy - xy * xy);
}

double analytic_bound(double lambda_max) { return 2.75 * lambda_max * lambda_max; }

double analytic_bound(const Spectrum& spectrum) { return analytic_bound(spectrum.lambda_max); }

namespace {

struct AscentResult {
  double value = 0.0;  // |K|
  double signed_value = 0.0;
  Buf u{}, w{};
  bool discarded = false;
};

AscentResult ascend(const CurvatureModel& model, const Buf& u0, const Buf& w0,
                    const MaximizerOptions& opt) {
  const int dim = model.dim();
  AscentResult res;
  res.u = u0;
  res.w = w0;
  if (orthonormalize(res.u.data(), res.w.data(), dim) < opt.collapse_tol) {
    res.discarded = true;
    return res;
  }
  auto objective = [&](const double* u, const double* w) {
    return std::abs(model.sectional(u, w));
  };
  double f = objective(res.u.data(), res.w.data());
  double eta = opt.initial_step;
  Buf gu, gw, cu, cw;
  for (int step = 0; step < opt.max_steps; ++step) {
    // Central-difference gradient in the 2*dim ambient coordinates.
    for (int i = 0; i < dim; ++i) {
      const double keep = res.u[i];
      res.u[i] = keep + opt.fd_step;
      const double fp = objective(res.u.data(), res.w.data());
      res.u[i] = keep - opt.fd_step;
      const double fm = objective(res.u.data(), res.w.data());
      res.u[i] = keep;
      gu[i] = (fp - fm) / (2.0 * opt.fd_step);
    }
    for (int i = 0; i < dim; ++i) {
      const double keep = res.w[i];
      res.w[i] = keep + opt.fd_step;
      const double fp = objective(res.u.data(), res.w.data());
      res.w[i] = keep - opt.fd_step;
      const double fm = objective(res.u.data(), res.w.data());
      res.w[i] = keep;
      gw[i] = (fp - fm) / (2.0 * opt.fd_step);
    }
    // Keep only the part that moves the plane (orthogonal to span(u, w)).
    for (double* g : {gu.data(), gw.data()}) {
      const double cu_ = dot(g, res.u.data(), dim);
      const double cw_ = dot(g, res.w.data(), dim);
      for (int i = 0; i < dim; ++i) g[i] -= cu_ * res.u[i] + cw_ * res.w[i];
    }
    const double gnorm = std::sqrt(dot(gu.data(), gu.data(), dim) + dot(gw.data(), gw.data(), dim));
    if (!(gnorm > 1e-13)) break;

    bool accepted = false;
    double gain = 0.0;
    for (int halving = 0; halving < 40; ++halving) {
      for (int i = 0; i < dim; ++i) {
        cu[i] = res.u[i] + eta * gu[i];
        cw[i] = res.w[i] + eta * gw[i];
      }
      const double cosine = std::abs(dot(cu.data(), cw.data(), dim)) /
                            std::sqrt(dot(cu.data(), cu.data(), dim) * dot(cw.data(), cw.data(), dim));
      if (orthonormalize(cu.data(), cw.data(), dim) < opt.collapse_tol &&
          cosine > 1.0 - opt.collapse_tol) {
        res.discarded = true;
        return res;
      }
      const double fc = objective(cu.data(), cw.data());
      if (fc > f) {
        gain = fc - f;
        f = fc;
        res.u = cu;
        res.w = cw;
        accepted = true;
        eta = std::min(2.0 * eta, 4.0);
        break;
      }
      eta *= 0.5;
    }
    if (!accepted || gain < opt.improvement_tol) break;
  }
  res.value = f;
  res.signed_value = model.sectional(res.u.data(), res.w.data());
  return res;
}

}  // namespace

CurvatureReport max_abs_curvature(const BlockGenerator& a, int budget, std::uint64_t seed,
                                  const MaximizerOptions& options) {
  const CurvatureModel model(a);
  const int dim = model.dim();
  const int coordinate = dim * (dim - 1) / 2;
  if (budget < coordinate) {
    throw InvalidArgument("curvature", "budget " + std::to_string(budget) +
                                           " is below the number of coordinate planes " +
                                           std::to_string(coordinate));
  }

  std::vector<AscentResult> results(static_cast<std::size_t>(budget));
  parallel_for(results.size(), [&](std::size_t index) {
    Buf u{}, w{};
    const int idx = static_cast<int>(index);
    if (idx < coordinate) {
      // Enumerate (i, j), i < j, in lexicographic order.
      int i = 0, rem = idx;
      while (rem >= dim - 1 - i) {
        rem -= dim - 1 - i;
        ++i;
      }
      u[i] = 1.0;
      w[i + 1 + rem] = 1.0;
    } else {
      CounterRng rng(seed, index);
      for (int k = 0; k < dim; ++k) u[k] = rng.normal();
      for (int k = 0; k < dim; ++k) w[k] = rng.normal();
    }
    results[index] = ascend(model, u, w, options);
  });

  CurvatureReport report;
  report.seed = seed;
  report.samples_used = budget;
  report.coordinate_seeds = coordinate;
  report.analytic_bound = analytic_bound(a.lambda_max());
  int best = -1;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].discarded) {
      ++report.discarded;
      continue;
    }
    if (best < 0 || results[i].value > results[static_cast<std::size_t>(best)].value) {
      best = static_cast<int>(i);
    }
  }
  if (best < 0) throw Error("curvature", "every restart collapsed");
  const auto& r = results[static_cast<std::size_t>(best)];
  report.max_abs = r.value;
  report.value_at_max = r.signed_value;
  report.argmax_plane.u = Eigen::Map<const Vec>(r.u.data(), dim);
  report.argmax_plane.w = Eigen::Map<const Vec>(r.w.data(), dim);
  return report;
}

}  // namespace pinch
