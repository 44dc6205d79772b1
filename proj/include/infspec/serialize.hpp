#pragma once

// JSON / CSV / binary field formats.
//
// Domain spec JSON:
//   {"kind": "ball",            "dimension": n, "params": {"radius": r, "center": [..]}}
//   {"kind": "annulus",         "dimension": 2, "params": {"outer_radius": R, "inner_radius": p}}
//   {"kind": "stadium",         "dimension": 2, "params": {"eps": e, "ell": l}}
//   {"kind": "regular_polygon", "dimension": 2, "params": {"sides": k, "apothem": a}}
//   {"kind": "ellipse",         "dimension": n, "params": {"axes": [a1, .., an]}}
//
// Field export: <base>.json header {schema_version, origin, h, width, height,
// provenance, quantity, dtype, byte_order, layout} and <base>.bin holding
// width*height little-endian float64 values, row-major from the lowest row,
// NaN outside the domain.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "infspec/domains.hpp"
#include "infspec/geodesic.hpp"
#include "infspec/raster.hpp"
#include "infspec/spectra.hpp"

namespace infspec {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const DomainSpec& spec);
DomainSpec domain_from_json(const Json& j);

Json to_json(const EigenPair& pair);
Json to_json(const DiameterEstimate& d);
Json to_json(const SandwichCheck& s);
Json to_json(const StabilityReport& report);
Json to_json(const SweepResult& sweep);

// 17 significant digits; NaN and infinities become null in JSON and empty
// cells in CSV.
std::string format_double(double v);

// Deterministic rendering with two-space indentation.
std::string dump(const Json& j);

// Columns: index,delta1,delta2,hausdorff,delta1_numeric,delta2_numeric,
//          hausdorff_numeric,fraenkel,sup_deviation
std::string sweep_csv(const SweepResult& sweep);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

void write_field(const std::filesystem::path& base, const DistanceField& field,
                 std::string_view quantity);
DistanceField read_field(const std::filesystem::path& base);

// 16-bit binary PGM scaled to the field maximum, top row first.
void write_pgm(const std::filesystem::path& path, const DistanceField& field);

}  // namespace infspec
