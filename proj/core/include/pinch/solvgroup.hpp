#pragma once

// The group S = R^n x| R with (v,t)(w,s) = (v + Exp(tA)w, t + s), its
// generator A and the left-invariant metric.

#include "pinch/spectra.hpp"

#include <Eigen/Dense>

#include <vector>

namespace pinch {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// One diagonal block of the generator: lambda*I + phi*J for a 2x2 rotation
/// block (J = [[0,1],[-1,0]]), or the scalar lambda.
struct GeneratorBlock {
  enum class Kind { Rot2, Scal1 };
  Kind kind = Kind::Scal1;
  double lambda = 0.0;
  double phi = 0.0;

  int size() const { return kind == Kind::Rot2 ? 2 : 1; }

  static GeneratorBlock rot2(double lambda, double phi) { return {Kind::Rot2, lambda, phi}; }
  static GeneratorBlock scal1(double lambda) { return {Kind::Scal1, lambda, 0.0}; }
};

class BlockGenerator {
 public:
  BlockGenerator() = default;
  explicit BlockGenerator(std::vector<GeneratorBlock> blocks);

  int n() const { return n_; }
  const std::vector<GeneratorBlock>& blocks() const { return blocks_; }
  const Mat& dense() const { return dense_; }

  /// max |lambda| over the blocks.
  double lambda_max() const;
  /// The same generator with every phi set to zero.
  BlockGenerator diagonal_part() const;

 private:
  int n_ = 0;
  std::vector<GeneratorBlock> blocks_;
  Mat dense_;
};

struct GroupElement {
  Vec v;
  double t = 0.0;

  static GroupElement identity(int n) { return {Vec::Zero(n), 0.0}; }
};

/// Lie algebra vector (X', x0).
struct TangentVector {
  Vec xp;
  double x0 = 0.0;

  /// Concatenated (X', x0) in R^{n+1}.
  Vec stacked() const;
  static TangentVector from_stacked(const Vec& x);
};

/// One Rot2 block per conjugate pair (in spectrum order), then one Scal1 per
/// positive real root. Throws Unrepresentable for negative real roots.
BlockGenerator assemble_generator(const Spectrum& spectrum);

/// Exp(tA) from the block formula e^{t lambda} [[cos, sin], [-sin, cos]].
Mat exp_tA_closed(const BlockGenerator& a, double t);

/// Matrix exponential by scaling and squaring with the degree-13 Pade
/// approximant.
Mat exp_generic(const Mat& m);

GroupElement multiply(const GroupElement& g, const GroupElement& h, const BlockGenerator& a);
GroupElement inverse(const GroupElement& g, const BlockGenerator& a);
/// g^{-1} h^{-1} g h by the group law.
GroupElement commutator(const GroupElement& g, const GroupElement& h, const BlockGenerator& a);
/// Vector part of [(v,t),(w,s)] from the explicit formula
/// u = h(-s-t)v - h(-t)v + h(-s)w - h(-s-t)w.
Vec commutator_formula(const GroupElement& g, const GroupElement& h, const BlockGenerator& a);

/// Gram matrix of the left-invariant metric at p: H(-t)^T H(-t) with
/// H(-t) = blockdiag(Exp(-tA), 1).
Mat metric_at(const GroupElement& p, const BlockGenerator& a);

}  // namespace pinch
