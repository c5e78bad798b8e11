#include "pinch/quotient.hpp"

#include "pinch/errors.hpp"
#include "pinch/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace pinch {

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

Mat to_double(const IntMatrix& m) {
  Mat out(m.size(), m.size());
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) out(i, j) = m(i, j).get_d();
  }
  return out;
}

double condition_number(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

// Eigenvector of T for eigenvalue r: start from the solver's vector and apply
// two steps of inverse iteration with a shift next to r.
CVec refine_eigenvector(const Mat& t, std::complex<double> r, CVec v) {
  const auto n = t.rows();
  const CMat shifted = t.cast<std::complex<double>>() -
                       (r * (1.0 + 1e-13)) * CMat::Identity(n, n);
  Eigen::PartialPivLU<CMat> lu(shifted);
  for (int it = 0; it < 2; ++it) {
    CVec next = lu.solve(v);
    if (!next.allFinite() || next.norm() == 0.0) break;
    v = next / next.norm();
  }
  // Rotate the phase so the largest component is real; only cosmetic.
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v *= std::conj(v(big)) / std::abs(v(big));
  return v;
}

Mat int_power(const LatticeData& lattice, long m) {
  const IntMatrix& base = m >= 0 ? lattice.T : lattice.T_inverse;
  Mat b = to_double(base);
  Mat out = Mat::Identity(b.rows(), b.cols());
  for (long i = 0; i < std::labs(m); ++i) out = out * b;
  return out;
}

}  // namespace

LatticeData LatticeData::refined(int new_h) const {
  if (new_h <= 0) throw InvalidArgument("quotient", "refinement h must be positive");
  LatticeData out = *this;
  out.h = new_h;
  return out;
}

LatticeData LatticeData::from_parts(IntMatrix T, Mat P, int h) {
  LatticeData out;
  out.T_inverse = inverse_unimodular(T);
  out.T = std::move(T);
  out.P = std::move(P);
  out.h = h;
  out.condition = condition_number(out.P);
  return out;
}

LatticeData conjugator(const IntMatrix& T, const Spectrum& spectrum) {
  const BlockGenerator gen = assemble_generator(spectrum);
  const int n = T.size();
  if (gen.n() != n) {
    throw InvalidArgument("conjugator", "spectrum dimension does not match T");
  }
  const Mat td = to_double(T);
  Eigen::ComplexEigenSolver<CMat> ces(td.cast<std::complex<double>>());
  if (ces.info() != Eigen::Success) {
    throw ConjugationFailure("eigen-decomposition of T failed", INFINITY, INFINITY);
  }
  const CVec& evals = ces.eigenvalues();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto take = [&](std::complex<double> r) {
    Eigen::Index best = -1;
    double dist = INFINITY;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double d = std::abs(evals(i) - r);
      if (d < dist) {
        dist = d;
        best = i;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    return refine_eigenvector(td, r, ces.eigenvectors().col(best));
  };

  Mat q(n, n);
  int col = 0;
  for (const auto& b : gen.blocks()) {
    if (b.kind == GeneratorBlock::Kind::Rot2) {
      const auto r = std::polar(std::exp(b.lambda), b.phi);
      const CVec v = take(r);
      q.col(col) = v.real();
      q.col(col + 1) = v.imag();
    } else {
      const CVec v = take({std::exp(b.lambda), 0.0});
      q.col(col) = v.real();
    }
    col += b.size();
  }

  Mat p = q.inverse();
  const double det = std::abs(p.determinant());
  if (!(det > 0) || !std::isfinite(det)) {
    throw ConjugationFailure("eigenvector matrix is singular", INFINITY, INFINITY);
  }
  p /= std::pow(det, 1.0 / n);

  LatticeData out;
  out.T = T;
  out.T_inverse = inverse_unimodular(T);
  out.P = p;
  out.h = 1;
  out.condition = condition_number(p);
  out.residual = (exp_tA_closed(gen, 1.0) * p - p * td).norm() / p.norm();
  if (!(out.residual < 1e-8)) {
    throw ConjugationFailure("residual " + std::to_string(out.residual) + " exceeds 1e-8 (cond " +
                                 std::to_string(out.condition) + ")",
                             out.residual, out.condition);
  }
  return out;
}

double lattice_invariance_check(const LatticeData& lattice, const BlockGenerator& a) {
  const Mat b = lattice.basis();
  const Mat image = exp_tA_closed(a, 1.0) * b;
  const Mat coords = b.partialPivLu().solve(image);
  const Mat offset = coords - coords.array().round().matrix();
  return (b * offset).colwise().norm().maxCoeff();
}

double fiber_covering_bound(const LatticeData& lattice, const BlockGenerator& a, double t) {
  const auto m = static_cast<long>(std::floor(t));
  const Mat basis = exp_tA_closed(a, -t) * lattice.basis() * int_power(lattice, m);
  Eigen::HouseholderQR<Mat> qr(basis);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  const Eigen::VectorXd diag = r.diagonal().cwiseAbs();
  if (!(diag.minCoeff() > 1e-14 * diag.maxCoeff())) {
    throw Error("quotient", "degenerate fiber lattice basis");
  }
  return 0.5 * diag.norm();
}

double fiber_diameter_upper(const LatticeData& lattice, const BlockGenerator& a, int t_grid) {
  if (t_grid < 16) throw InvalidArgument("quotient", "t_grid must be at least 16");
  double sup = 0.0;
  for (int j = 0; j <= t_grid; ++j) {
    sup = std::max(sup, fiber_covering_bound(lattice, a, static_cast<double>(j) / t_grid));
  }
  const double mu0 = fiber_covering_bound(lattice, a, 0.0);
  const double mu1 = fiber_covering_bound(lattice, a, 1.0);
  if (std::abs(mu1 - mu0) > 1e-6 * mu0) {
    throw Error("quotient", "fiber bound is not periodic under Exp(-A); lattice not invariant");
  }
  const double norm_a = a.n() == 0 ? 0.0 : Eigen::JacobiSVD<Mat>(a.dense()).singularValues()(0);
  const double dt = 1.0 / t_grid;
  return sup * (1.0 + norm_a * dt * std::exp(norm_a));
}

DiameterBound diameter_upper(const LatticeData& lattice, const BlockGenerator& a, int t_grid) {
  DiameterBound out;
  out.fiber_sup = fiber_diameter_upper(lattice, a, t_grid);
  out.upper = out.base_diam + out.fiber_sup;
  out.upper_paper = out.base_diam_paper + out.fiber_sup;
  return out;
}

double sampled_diameter(const LatticeData& lattice, const BlockGenerator& a, int grid) {
  const int n = a.n();
  if (n < 1 || n > 3) throw InvalidArgument("quotient", "sampled diameter supports 1 <= n <= 3");
  if (grid < 8) throw InvalidArgument("quotient", "grid must be at least 8 for connectivity");
  if (lattice.T.size() != n) throw InvalidArgument("quotient", "lattice dimension mismatch");

  const auto t_fwd = lattice.T.to_int64();
  const auto t_inv = lattice.T_inverse.to_int64();
  long fiber_nodes = 1;
  for (int i = 0; i < n; ++i) fiber_nodes *= grid;
  const long total = fiber_nodes * grid;

  auto wrap = [grid](long x) { return ((x % grid) + grid) % grid; };
  auto fiber_index = [&](const std::array<long, 3>& c) {
    long idx = 0;
    for (int i = n - 1; i >= 0; --i) idx = idx * grid + c[static_cast<std::size_t>(i)];
    return idx;
  };

  // Gram of the fiber metric at t = (2*ti + dt)/(2*grid) for half-step offsets.
  std::vector<Mat> gram(static_cast<std::size_t>(2 * grid + 1));
  for (int half = -1; half <= 2 * grid - 1; ++half) {
    const Mat e = exp_tA_closed(a, -(half / (2.0 * grid)));
    gram[static_cast<std::size_t>(half + 1)] = e.transpose() * e;
  }
  const Mat basis = lattice.basis();

  struct Edge {
    long to;
    double w;
  };
  std::vector<std::vector<Edge>> adj(static_cast<std::size_t>(total));
  int offsets = 1;
  for (int i = 0; i <= n; ++i) offsets *= 3;

  for (long node = 0; node < total; ++node) {
    const long ti = node / fiber_nodes;
    std::array<long, 3> c{};
    long rem = node % fiber_nodes;
    for (int i = 0; i < n; ++i) {
      c[static_cast<std::size_t>(i)] = rem % grid;
      rem /= grid;
    }
    for (int code = 0; code < offsets; ++code) {
      int rest = code;
      std::array<long, 3> d{};
      for (int i = 0; i < n; ++i) {
        d[static_cast<std::size_t>(i)] = rest % 3 - 1;
        rest /= 3;
      }
      const long dt = rest % 3 - 1;
      if (dt == 0 && std::all_of(d.begin(), d.begin() + n, [](long x) { return x == 0; })) continue;

      Vec dc(n);
      for (int i = 0; i < n; ++i) dc(i) = static_cast<double>(d[static_cast<std::size_t>(i)]) / grid;
      const Vec dv = basis * dc;
      const double dtt = static_cast<double>(dt) / grid;
      const Mat& g = gram[static_cast<std::size_t>(2 * ti + dt + 1)];
      const double w = std::sqrt(dv.dot(g * dv) + dtt * dtt);

      std::array<long, 3> target{};
      for (int i = 0; i < n; ++i) {
        target[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] + d[static_cast<std::size_t>(i)];
      }
      long tt = ti + dt;
      if (tt == grid || tt == -1) {
        // Deck transformation (v, s) ~ (Exp(A) v, s + 1); in lattice
        // coordinates Exp(A) acts as T.
        const auto& m = (tt == grid) ? t_inv : t_fwd;
        std::array<long, 3> mapped{};
        for (int i = 0; i < n; ++i) {
          long s = 0;
          for (int j = 0; j < n; ++j) {
            s += m[static_cast<std::size_t>(i * n + j)] * target[static_cast<std::size_t>(j)];
          }
          mapped[static_cast<std::size_t>(i)] = s;
        }
        target = mapped;
        tt = (tt == grid) ? 0 : grid - 1;
      }
      for (int i = 0; i < n; ++i) target[static_cast<std::size_t>(i)] = wrap(target[static_cast<std::size_t>(i)]);
      const long to = tt * fiber_nodes + fiber_index(target);
      adj[static_cast<std::size_t>(node)].push_back({to, w});
      adj[static_cast<std::size_t>(to)].push_back({node, w});
    }
  }

  std::vector<double> eccentricity(static_cast<std::size_t>(total), 0.0);
  parallel_for(static_cast<std::size_t>(total), [&](std::size_t source) {
    std::vector<double> dist(static_cast<std::size_t>(total), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, long>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, static_cast<long>(source)});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(u)]) continue;
      for (const auto& e : adj[static_cast<std::size_t>(u)]) {
        const double nd = d + e.w;
        if (nd < dist[static_cast<std::size_t>(e.to)]) {
          dist[static_cast<std::size_t>(e.to)] = nd;
          heap.push({nd, e.to});
        }
      }
    }
    eccentricity[source] = *std::max_element(dist.begin(), dist.end());
  });
  const double diam = *std::max_element(eccentricity.begin(), eccentricity.end());
  if (!std::isfinite(diam)) throw Error("quotient", "sampling graph is disconnected");
  return diam;
}

}  // namespace pinch
