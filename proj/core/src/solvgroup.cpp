#include "pinch/solvgroup.hpp"

#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pinch {

namespace {

void require_dim(const GroupElement& g, const BlockGenerator& a) {
  if (g.v.size() != a.n()) {
    throw InvalidArgument("solvgroup", "group element dimension " + std::to_string(g.v.size()) +
                                           " does not match generator dimension " +
                                           std::to_string(a.n()));
  }
}

}  // namespace

BlockGenerator::BlockGenerator(std::vector<GeneratorBlock> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) n_ += b.size();
  dense_ = Mat::Zero(n_, n_);
  int at = 0;
  for (const auto& b : blocks_) {
    if (b.kind == GeneratorBlock::Kind::Rot2) {
      dense_(at, at) = b.lambda;
      dense_(at + 1, at + 1) = b.lambda;
      dense_(at, at + 1) = b.phi;
      dense_(at + 1, at) = -b.phi;
    } else {
      dense_(at, at) = b.lambda;
    }
    at += b.size();
  }
}

double BlockGenerator::lambda_max() const {
  double m = 0.0;
  for (const auto& b : blocks_) m = std::max(m, std::abs(b.lambda));
  return m;
}

BlockGenerator BlockGenerator::diagonal_part() const {
  std::vector<GeneratorBlock> out = blocks_;
  for (auto& b : out) b.phi = 0.0;
  return BlockGenerator(std::move(out));
}

Vec TangentVector::stacked() const {
  Vec x(xp.size() + 1);
  x.head(xp.size()) = xp;
  x(xp.size()) = x0;
  return x;
}

TangentVector TangentVector::from_stacked(const Vec& x) {
  const auto n = x.size() - 1;
  return {x.head(n), x(n)};
}

BlockGenerator assemble_generator(const Spectrum& spectrum) {
  if (!spectrum.negative_reals.empty()) {
    throw Unrepresentable("generator", "spectrum has " +
                                           std::to_string(spectrum.negative_reals.size()) +
                                           " negative real root(s); no real logarithm exists");
  }
  std::vector<GeneratorBlock> blocks;
  for (const auto& p : spectrum.pairs) blocks.push_back(GeneratorBlock::rot2(p.lambda, p.phi));
  for (double l : spectrum.reals) blocks.push_back(GeneratorBlock::scal1(l));
  return BlockGenerator(std::move(blocks));
}

Mat exp_tA_closed(const BlockGenerator& a, double t) {
  Mat e = Mat::Zero(a.n(), a.n());
  int at = 0;
  for (const auto& b : a.blocks()) {
    const double scale = std::exp(t * b.lambda);
    if (b.kind == GeneratorBlock::Kind::Rot2) {
      const double c = std::cos(t * b.phi);
      const double s = std::sin(t * b.phi);
      e(at, at) = scale * c;
      e(at, at + 1) = scale * s;
      e(at + 1, at) = -scale * s;
      e(at + 1, at + 1) = scale * c;
    } else {
      e(at, at) = scale;
    }
    at += b.size();
  }
  return e;
}

Mat exp_generic(const Mat& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("exp", "matrix must be square");
  if (!m.allFinite()) throw InvalidArgument("exp", "matrix has non-finite entries");
  const auto n = m.rows();
  if (n == 0) return m;

  // Higham (2005) coefficients for the [13/13] Pade approximant.
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > 700.0) throw Error("exp", "matrix norm too large; exponential would overflow");
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const Mat a = m / std::ldexp(1.0, squarings);

  const Mat id = Mat::Identity(n, n);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const Mat u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                     b[3] * a2 + b[1] * id);
  const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
                b[0] * id;
  Mat r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  if (!r.allFinite()) throw Error("exp", "matrix exponential overflowed");
  return r;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h, const BlockGenerator& a) {
  require_dim(g, a);
  require_dim(h, a);
  return {g.v + exp_tA_closed(a, g.t) * h.v, g.t + h.t};
}

GroupElement inverse(const GroupElement& g, const BlockGenerator& a) {
  require_dim(g, a);
  return {-(exp_tA_closed(a, -g.t) * g.v), -g.t};
}

GroupElement commutator(const GroupElement& g, const GroupElement& h, const BlockGenerator& a) {
  return multiply(multiply(inverse(g, a), inverse(h, a), a), multiply(g, h, a), a);
}

Vec commutator_formula(const GroupElement& g, const GroupElement& h, const BlockGenerator& a) {
  require_dim(g, a);
  require_dim(h, a);
  const double t = g.t;
  const double s = h.t;
  const Mat e_st = exp_tA_closed(a, -s - t);
  return e_st * g.v - exp_tA_closed(a, -t) * g.v + exp_tA_closed(a, -s) * h.v - e_st * h.v;
}

Mat metric_at(const GroupElement& p, const BlockGenerator& a) {
  require_dim(p, a);
  const int n = a.n();
  Mat h = Mat::Identity(n + 1, n + 1);
  h.topLeftCorner(n, n) = exp_tA_closed(a, -p.t);
  return h.transpose() * h;
}

}  // namespace pinch
