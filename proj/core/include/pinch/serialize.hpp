#pragma once

#include "pinch/certify.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace pinch {

inline constexpr const char* kSchema = "pinch-cert/1";

/// Rounds to 15 significant digits so serialized certificates are stable.
double round15(double x);

nlohmann::json to_json(const IntPoly& p);
IntPoly int_poly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PolySpec& s);
nlohmann::json to_json(const Spectrum& s);
nlohmann::json to_json(const CurvatureReport& r);
nlohmann::json to_json(const DiameterBound& d);
nlohmann::json to_json(const Mat& m);
/// runtime_ms is left out unless include_timing is set, which keeps the
/// document byte-identical across reruns.
nlohmann::json to_json(const Certificate& c, bool include_timing = false);

/// {"schema": ..., "certificate": {...}}
nlohmann::json certificate_document(const Certificate& c, bool include_timing = false);
/// {"schema": ..., "certificates": [...]}
nlohmann::json table_document(const std::vector<Certificate>& rows, bool include_timing = false);

const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& os, const std::vector<Certificate>& rows);

}  // namespace pinch
