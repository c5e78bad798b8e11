#include "pinch/certify.hpp"

#include "pinch/errors.hpp"
#include "pinch/parallel.hpp"

#include <chrono>
#include <cmath>

namespace pinch {

namespace {

constexpr double kRootAgreement = 1e-10;
constexpr double kLambdaSumTol = 1e-12;
constexpr double kLatticeTol = 1e-8;
constexpr double kCurvatureSlack = 1e-6;
constexpr double kWitnessFloor = 0.01;

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(name, e.what());
  }
}

}  // namespace

double diameter_threshold() { return std::sqrt(12.0 / 11.0); }

Certificate certify_dimension(int n, const CertifyOptions& options) {
  if (n < 2) throw InvalidArgument("certify", "dimension must be at least 2");
  const auto start = std::chrono::steady_clock::now();

  Certificate c;
  c.n = n;
  c.seed = options.seed;
  c.budget = options.budget;
  c.paper_mode = options.paper_mode;
  c.spec = PolySpec::for_dimension(n);

  c.polynomial = stage("polynomial", [&] { return build_polynomial(c.spec); });
  const IntMatrix t = stage("companion", [&] { return companion_matrix(c.polynomial); });
  c.unimodular = is_unimodular(t);
  if (!c.unimodular) throw Error("unimodular", "companion matrix is not in GL(Z,n)");
  c.charpoly_matches = charpoly_exact(t) == c.polynomial;
  if (!c.charpoly_matches) throw Error("charpoly", "characteristic polynomial mismatch");

  const Spectrum spectrum = roots_closed_form(c.spec);
  const auto iterative = roots_iterative(c.polynomial);
  c.root_crosscheck = match_roots(iterative, spectrum.roots());
  if (!(c.root_crosscheck < kRootAgreement)) {
    throw Error("spectrum", "iterative and closed-form roots differ by " +
                                std::to_string(c.root_crosscheck));
  }
  c.lambda_sum = spectrum.lambda_sum();
  if (!(std::abs(c.lambda_sum) < kLambdaSumTol)) {
    throw Error("spectrum", "lambda sum " + std::to_string(c.lambda_sum) + " is not zero");
  }
  c.lambda_max = spectrum.lambda_max;
  c.two_over_n = 2.0 / n;
  const SpectralBound sb = verify_spectral_bound(spectrum);
  c.spectral_bound_holds = sb.holds;
  c.spectral_margin = sb.margin;
  for (double l : spectrum.all_lambdas()) {
    c.not_nilcoverable_witness = std::max(c.not_nilcoverable_witness, std::abs(std::exp(l) - 1.0));
  }

  const BlockGenerator gen = stage("generator", [&] { return assemble_generator(spectrum); });
  const LatticeData base = stage("conjugator", [&] { return conjugator(t, spectrum); });
  c.conjugation_residual = base.residual;
  const double norm_scale = base.basis().colwise().norm().minCoeff();
  c.lattice_invariance = lattice_invariance_check(base, gen) / norm_scale;
  if (!(c.lattice_invariance < kLatticeTol)) {
    throw Error("lattice", "Exp(A) does not preserve the lattice (" +
                               std::to_string(c.lattice_invariance) + ")");
  }

  // Metric quantities are computed on the isometric group with the diagonal
  // generator.
  const CurvatureReport curv = stage("curvature", [&] {
    return max_abs_curvature(gen.diagonal_part(), options.budget, options.seed);
  });
  c.curv_bound = analytic_bound(spectrum);
  c.curv_sampled_max = curv.max_abs;
  c.curvature_respected = curv.max_abs <= c.curv_bound * (1.0 + kCurvatureSlack);
  c.target = 12.0 / (static_cast<double>(n) * n);

  auto evaluate = [&](int h) {
    return stage("diameter", [&] { return diameter_upper(base.refined(h), gen, options.t_grid); });
  };
  auto acceptable = [&](const DiameterBound& d, bool strict) {
    const double diam = options.paper_mode ? d.upper_paper : d.upper;
    if (!(diam < diameter_threshold())) return false;
    return !strict || c.curv_bound * diam * diam < c.target;
  };

  DiameterBound diam;
  if (options.h) {
    if (*options.h <= 0) throw InvalidArgument("certify", "h must be positive");
    c.h = *options.h;
    diam = evaluate(c.h);
  } else {
    // Smallest power of two meeting the sqrt(12/11) threshold and the target
    // product; if the target is out of reach, the smallest meeting the
    // threshold alone.
    std::optional<int> fallback;
    std::optional<int> chosen;
    for (int e = 0; e <= options.max_h_exponent && !chosen; ++e) {
      const int h = 1 << e;
      const DiameterBound d = evaluate(h);
      if (acceptable(d, true)) {
        chosen = h;
      } else if (!fallback && acceptable(d, false)) {
        fallback = h;
      }
    }
    c.h = chosen ? *chosen : fallback ? *fallback : (1 << options.max_h_exponent);
    diam = evaluate(c.h);
  }

  c.fiber_sup = diam.fiber_sup;
  c.diam_upper = diam.upper;
  c.diam_upper_paper = diam.upper_paper;
  c.product = c.curv_bound * c.diam_upper * c.diam_upper;
  c.product_paper = c.curv_bound * c.diam_upper_paper * c.diam_upper_paper;

  const bool structural = c.unimodular && c.charpoly_matches && c.curvature_respected &&
                          c.not_nilcoverable_witness > kWitnessFloor;
  c.passes = structural && c.product < c.target && c.diam_upper < diameter_threshold();
  c.passes_paper_mode =
      structural && c.product_paper < c.target && c.diam_upper_paper < diameter_threshold();

  c.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return c;
}

std::vector<Certificate> table(const std::vector<int>& dims, const CertifyOptions& options) {
  std::vector<Certificate> rows(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    try {
      rows[i] = certify_dimension(dims[i], options);
    } catch (const std::exception& e) {
      Certificate failed;
      failed.n = dims[i];
      failed.seed = options.seed;
      failed.budget = options.budget;
      failed.paper_mode = options.paper_mode;
      failed.error = e.what();
      rows[i] = std::move(failed);
    }
  }
  return rows;
}

std::vector<int> parse_dims(const std::string& range, bool even_only) {
  int lo = 0, hi = 0;
  try {
    const auto sep = range.find("..");
    std::size_t used = 0;
    if (sep == std::string::npos) {
      lo = hi = std::stoi(range, &used);
      if (used != range.size()) throw std::invalid_argument("trailing characters");
    } else {
      const std::string a = range.substr(0, sep);
      const std::string b = range.substr(sep + 2);
      lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument("trailing characters");
      hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument("trailing characters");
    }
  } catch (const std::exception&) {
    throw InvalidArgument("dims", "cannot parse dimension range '" + range + "'");
  }
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) {
    if (even_only && n % 2 != 0) continue;
    out.push_back(n);
  }
  return out;
}

}  // namespace pinch
