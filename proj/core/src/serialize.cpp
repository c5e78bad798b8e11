#include "pinch/serialize.hpp"

#include "pinch/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace pinch {

using nlohmann::json;

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

namespace {

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

}  // namespace

json to_json(const IntPoly& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
  return arr;
}

IntPoly int_poly_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw InvalidArgument("json", "polynomial must be a non-empty array");
  }
  std::vector<BigInt> coeffs;
  for (const auto& e : j) {
    if (!e.is_string()) throw InvalidArgument("json", "coefficients must be decimal strings");
    BigInt v;
    if (v.set_str(e.get<std::string>(), 10) != 0) {
      throw InvalidArgument("json", "bad integer '" + e.get<std::string>() + "'");
    }
    coeffs.push_back(v);
  }
  return IntPoly(std::move(coeffs));
}

json to_json(const PolySpec& s) {
  return {{"k", s.k}, {"sign", s.sign}, {"odd_factor", s.odd_factor}};
}

json to_json(const Spectrum& s) {
  json pairs = json::array();
  for (const auto& p : s.pairs) pairs.push_back({{"lambda", number(p.lambda)}, {"phi", number(p.phi)}});
  json reals = json::array();
  for (double l : s.reals) reals.push_back(number(l));
  json out = {{"n", s.n}, {"pairs", pairs}, {"reals", reals}, {"lambda_max", number(s.lambda_max)}};
  if (!s.negative_reals.empty()) {
    json neg = json::array();
    for (double l : s.negative_reals) neg.push_back(number(l));
    out["negative_reals"] = neg;
  }
  return out;
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const CurvatureReport& r) {
  auto vec = [](const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
    return a;
  };
  const double ratio = r.analytic_bound > 0 ? r.max_abs / r.analytic_bound : 0.0;
  return {{"max_abs", number(r.max_abs)},
          {"value_at_max", number(r.value_at_max)},
          {"argmax_plane", {{"u", vec(r.argmax_plane.u)}, {"w", vec(r.argmax_plane.w)}}},
          {"analytic_bound", number(r.analytic_bound)},
          {"ratio", number(ratio)},
          {"samples_used", r.samples_used},
          {"coordinate_seeds", r.coordinate_seeds},
          {"discarded", r.discarded},
          {"seed", r.seed}};
}

json to_json(const DiameterBound& d) {
  json out = {{"base_diam", number(d.base_diam)},
              {"base_diam_paper", number(d.base_diam_paper)},
              {"fiber_sup", number(d.fiber_sup)},
              {"upper", number(d.upper)},
              {"upper_paper", number(d.upper_paper)}};
  out["sampled"] = d.sampled ? number(*d.sampled) : json(nullptr);
  return out;
}

json to_json(const Certificate& c, bool include_timing) {
  json out = {
      {"n", c.n},
      {"spec", to_json(c.spec)},
      {"polynomial", to_json(c.polynomial)},
      {"unimodular", c.unimodular},
      {"charpoly_matches", c.charpoly_matches},
      {"root_crosscheck", number(c.root_crosscheck)},
      {"lambda_sum", number(c.lambda_sum)},
      {"lambda_max", number(c.lambda_max)},
      {"two_over_n", number(c.two_over_n)},
      {"spectral_margin", number(c.spectral_margin)},
      {"spectral_bound_holds", c.spectral_bound_holds},
      {"conjugation_residual", number(c.conjugation_residual)},
      {"lattice_invariance", number(c.lattice_invariance)},
      {"curv_bound", number(c.curv_bound)},
      {"curv_sampled_max", number(c.curv_sampled_max)},
      {"curvature_respected", c.curvature_respected},
      {"h", c.h},
      {"fiber_sup", number(c.fiber_sup)},
      {"diam_upper", number(c.diam_upper)},
      {"diam_upper_paper", number(c.diam_upper_paper)},
      {"product", number(c.product)},
      {"product_paper", number(c.product_paper)},
      {"target", number(c.target)},
      {"passes", c.passes},
      {"passes_paper_mode", c.passes_paper_mode},
      {"paper_mode", c.paper_mode},
      {"not_nilcoverable_witness", number(c.not_nilcoverable_witness)},
      {"seed", c.seed},
      {"budget", c.budget},
  };
  if (include_timing) out["runtime_ms"] = c.runtime_ms;
  if (!c.error.empty()) out["error"] = c.error;
  return out;
}

json certificate_document(const Certificate& c, bool include_timing) {
  return {{"schema", kSchema}, {"certificate", to_json(c, include_timing)}};
}

json table_document(const std::vector<Certificate>& rows, bool include_timing) {
  json arr = json::array();
  for (const auto& c : rows) arr.push_back(to_json(c, include_timing));
  return {{"schema", kSchema}, {"certificates", arr}};
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "n",          "k",          "sign",         "odd_factor",        "lambda_max",
      "two_over_n", "spectral_ok", "curv_bound",  "curv_sampled",      "h",
      "diam_upper", "diam_upper_paper", "product", "product_paper",    "target",
      "passes",     "passes_paper_mode", "witness", "seed",            "runtime_ms"};
  return cols;
}

void write_csv(std::ostream& os, const std::vector<Certificate>& rows) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  auto num = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::string(buf);
  };
  auto flag = [](bool b) { return b ? "true" : "false"; };
  for (const auto& c : rows) {
    if (!c.error.empty()) {
      os << c.n;
      for (std::size_t i = 1; i < cols.size(); ++i) {
        if (cols[i] == "passes" || cols[i] == "passes_paper_mode") {
          os << ",false";
        } else if (cols[i] == "seed") {
          os << ',' << c.seed;
        } else {
          os << ",nan";
        }
      }
      os << '\n';
      continue;
    }
    os << c.n << ',' << c.spec.k << ',' << c.spec.sign << ',' << flag(c.spec.odd_factor) << ','
       << num(c.lambda_max) << ',' << num(c.two_over_n) << ',' << flag(c.spectral_bound_holds)
       << ',' << num(c.curv_bound) << ',' << num(c.curv_sampled_max) << ',' << c.h << ','
       << num(c.diam_upper) << ',' << num(c.diam_upper_paper) << ',' << num(c.product) << ','
       << num(c.product_paper) << ',' << num(c.target) << ',' << flag(c.passes) << ','
       << flag(c.passes_paper_mode) << ',' << num(c.not_nilcoverable_witness) << ',' << c.seed
       << ',' << c.runtime_ms << '\n';
  }
}

}  // namespace pinch
