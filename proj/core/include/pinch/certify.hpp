#pragma once

#include "pinch/curvature.hpp"
#include "pinch/exactalg.hpp"
#include "pinch/quotient.hpp"
#include "pinch/spectra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pinch {

struct CertifyOptions {
  /// Lattice refinement; chosen automatically when empty.
  std::optional<int> h;
  int budget = 4096;
  std::uint64_t seed = 0;
  /// Select h and judge `passes` against the diameter bound with base 1.
  bool paper_mode = false;
  int t_grid = 64;
  /// Largest exponent tried by the power-of-two search for h.
  int max_h_exponent = 30;
};

/// Per-dimension verification record.
struct Certificate {
  int n = 0;
  PolySpec spec;
  IntPoly polynomial;
  bool unimodular = false;
  bool charpoly_matches = false;
  double root_crosscheck = 0.0;
  double lambda_sum = 0.0;
  double lambda_max = 0.0;
  double two_over_n = 0.0;
  double spectral_margin = 0.0;
  bool spectral_bound_holds = false;
  double conjugation_residual = 0.0;
  double lattice_invariance = 0.0;
  double curv_bound = 0.0;
  double curv_sampled_max = 0.0;
  bool curvature_respected = false;
  int h = 1;
  double fiber_sup = 0.0;
  double diam_upper = 0.0;
  double diam_upper_paper = 0.0;
  double product = 0.0;
  double product_paper = 0.0;
  double target = 0.0;
  bool passes = false;
  bool passes_paper_mode = false;
  bool paper_mode = false;
  double not_nilcoverable_witness = 0.0;
  std::uint64_t seed = 0;
  int budget = 0;
  long long runtime_ms = 0;
  /// Set only for table rows whose pipeline threw.
  std::string error;
};

/// sqrt(12/11), the diameter threshold that turns |K| <= 11/n^2 into
/// |K| diam^2 < 12/n^2.
double diameter_threshold();

/// Runs the full pipeline for dimension n. Any failing stage throws an Error
/// naming the stage.
Certificate certify_dimension(int n, const CertifyOptions& options = {});

/// Certificates for each dimension in order. Failures are recorded in the
/// row's `error` field instead of aborting.
std::vector<Certificate> table(const std::vector<int>& dims, const CertifyOptions& options = {});

/// Parses "A..B" (inclusive) or a single "N".
std::vector<int> parse_dims(const std::string& range, bool even_only = false);

}  // namespace pinch
