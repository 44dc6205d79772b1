#include "infspec/serialize.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "infspec/errors.hpp"

namespace infspec {

namespace fs = std::filesystem;

namespace {

Json point(const Point2& p) { return Json::array({p[0], p[1]}); }

Json cell(const Cell& c) { return Json::array({c.i, c.j}); }

std::string_view to_string(Provenance p) {
  return p == Provenance::Euclidean ? "euclidean" : "geodesic";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "euclidean") return Provenance::Euclidean;
  if (s == "geodesic") return Provenance::Geodesic;
  throw ParameterError("unknown field provenance '" + std::string(s) + "'");
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

void dump_into(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        dump_into(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays (points, cells) stay on one line.
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const Json& e) {
                          return e.is_number() || e.is_null();
                        });
      out += flat ? "[" : "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out += flat ? ", " : ",\n";
        if (!flat) out += pad;
        dump_into(out, j[k], depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(out, j, 0);
  out += '\n';
  return out;
}

Json to_json(const DomainSpec& spec) {
  Json params;
  switch (spec.kind()) {
    case DomainKind::Ball: {
      const auto& b = spec.as<Ball>();
      params = {{"radius", b.radius}, {"center", b.center}};
      break;
    }
    case DomainKind::Annulus: {
      const auto& a = spec.as<Annulus>();
      params = {{"outer_radius", a.outer_radius}, {"inner_radius", a.inner_radius}};
      break;
    }
    case DomainKind::Stadium: {
      const auto& s = spec.as<Stadium>();
      params = {{"eps", s.eps}, {"ell", s.ell}};
      break;
    }
    case DomainKind::RegularPolygon: {
      const auto& p = spec.as<RegularPolygon>();
      params = {{"sides", p.sides}, {"apothem", p.apothem}};
      break;
    }
    case DomainKind::Ellipse:
      params = {{"axes", spec.as<Ellipse>().axes}};
      break;
  }
  return {{"kind", to_string(spec.kind())}, {"params", params}, {"dimension", spec.dimension()}};
}

DomainSpec domain_from_json(const Json& j) {
  try {
    const auto kind = domain_kind_from_string(j.at("kind").get<std::string>());
    const Json& p = j.at("params");
    std::optional<DomainSpec> spec;
    switch (kind) {
      case DomainKind::Ball: {
        const int n = j.value("dimension", 2);
        std::vector<double> center =
            p.contains("center") ? p.at("center").get<std::vector<double>>()
                                 : std::vector<double>(static_cast<std::size_t>(n), 0.0);
        spec.emplace(Ball{p.at("radius").get<double>(), std::move(center)});
        break;
      }
      case DomainKind::Annulus:
        spec = DomainSpec::annulus(p.at("outer_radius").get<double>(),
                                   p.at("inner_radius").get<double>());
        break;
      case DomainKind::Stadium:
        spec = DomainSpec::stadium(p.at("eps").get<double>(), p.at("ell").get<double>());
        break;
      case DomainKind::RegularPolygon:
        spec = DomainSpec::polygon(p.at("sides").get<int>(), p.at("apothem").get<double>());
        break;
      case DomainKind::Ellipse:
        spec = DomainSpec::ellipse(p.at("axes").get<std::vector<double>>());
        break;
    }
    if (j.contains("dimension") && j.at("dimension").get<int>() != spec->dimension())
      throw ParameterError("domain 'dimension' disagrees with its parameters");
    return *spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed domain spec: ") + e.what());
  }
}

Json to_json(const EigenPair& pair) {
  return {{"lambda_D", pair.lambda_D},
          {"lambda_N", pair.lambda_N},
          {"method", pair.method == EigenMethod::ClosedForm ? "closed_form" : "numeric"},
          {"h", optional_number(pair.h)},
          {"error_bars", Json::array({pair.error_bars[0], pair.error_bars[1]})}};
}

Json to_json(const DiameterEstimate& d) {
  return {{"value", d.value},
          {"error", d.error},
          {"from", cell(d.from)},
          {"to", cell(d.to)},
          {"fields_computed", d.fields_computed}};
}

Json to_json(const SandwichCheck& s) {
  Json trials = Json::array();
  for (const auto& t : s.outer_trials)
    trials.push_back({{"label", t.label},
                      {"center", point(t.center)},
                      {"farthest", t.farthest},
                      {"pass", t.pass}});
  return {{"slack", s.slack},
          {"inner_center", point(s.inner_center)},
          {"inradius_numeric", s.inradius},
          {"inner_pass", s.inner_pass},
          {"outer_pass", s.outer_pass},
          {"outer_center", point(s.outer_center)},
          {"outer_trials", trials}};
}

Json to_json(const StabilityReport& r) {
  Json j = {{"schema_version", kSchemaVersion},
            {"r", r.r},
            {"delta1", r.delta1},
            {"delta2", r.delta2},
            {"inner_radius", r.inner_radius},
            {"outer_radius_thm", r.outer_radius_thm},
            {"outer_radius_lemma", r.outer_radius_lemma},
            {"symdiff_inner", r.symdiff_inner},
            {"symdiff_outer", r.symdiff_outer},
            {"fraenkel", r.fraenkel},
            {"hausdorff", r.hausdorff},
            {"bound_C", r.bound_C},
            {"flags",
             {{"inner_ball", r.flags.inner_ball},
              {"outer_ball", r.flags.outer_ball},
              {"symdiff_inner_bound", r.flags.symdiff_inner_bound},
              {"symdiff_outer_printed", r.flags.symdiff_outer_printed},
              {"hausdorff_bound", r.flags.hausdorff_bound},
              {"theorem_pass", r.flags.theorem_pass()}}}};
  if (r.eigenfunction_deviation) j["eigenfunction_deviation"] = *r.eigenfunction_deviation;
  j["h"] = r.h;
  j["fraenkel_center"] = point(r.fraenkel_center);
  j["sandwich"] = to_json(r.sandwich);
  return j;
}

Json to_json(const SweepResult& s) {
  Json rows = Json::array();
  for (const auto& row : s.rows) {
    Json jr = {{"index", row.index},
               {"domain", to_json(row.spec)},
               {"delta1", row.closed.delta1},
               {"delta2", row.closed.delta2},
               {"hausdorff", row.hausdorff_closed}};
    if (row.numeric) {
      jr["delta1_numeric"] = row.numeric->delta1;
      jr["delta2_numeric"] = row.numeric->delta2;
    }
    if (row.hausdorff_numeric) jr["hausdorff_numeric"] = *row.hausdorff_numeric;
    if (row.fraenkel) jr["fraenkel"] = *row.fraenkel;
    if (row.sup_deviation) jr["sup_deviation"] = *row.sup_deviation;
    rows.push_back(std::move(jr));
  }
  Json summary = {{"delta1_strictly_decreasing", s.summary.delta1_strictly_decreasing},
                  {"delta2_strictly_decreasing", s.summary.delta2_strictly_decreasing},
                  {"hausdorff_strictly_decreasing", s.summary.hausdorff_strictly_decreasing},
                  {"last_hausdorff", s.summary.last_hausdorff}};
  if (s.summary.sup_deviation_nonincreasing)
    summary["sup_deviation_nonincreasing"] = *s.summary.sup_deviation_nonincreasing;
  return {{"schema_version", kSchemaVersion},
          {"family", to_string(s.family.kind)},
          {"r", s.r},
          {"summary", summary},
          {"rows", rows}};
}

std::string sweep_csv(const SweepResult& s) {
  std::string out =
      "index,delta1,delta2,hausdorff,delta1_numeric,delta2_numeric,hausdorff_numeric,fraenkel,"
      "sup_deviation\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& row : s.rows) {
    out += std::to_string(row.index);
    out += ',' + format_double(row.closed.delta1);
    out += ',' + format_double(row.closed.delta2);
    out += ',' + format_double(row.hausdorff_closed);
    out += ',' + (row.numeric ? format_double(row.numeric->delta1) : std::string());
    out += ',' + (row.numeric ? format_double(row.numeric->delta2) : std::string());
    out += ',' + opt(row.hausdorff_numeric);
    out += ',' + opt(row.fraenkel);
    out += ',' + opt(row.sup_deviation);
    out += '\n';
  }
  return out;
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    os.flush();
    if (!os) {
      os.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

void write_field(const fs::path& base, const DistanceField& field, std::string_view quantity) {
  static_assert(std::endian::native == std::endian::little, "field export assumes little-endian");
  Json header = {{"schema_version", kSchemaVersion},
                 {"origin", point(field.frame.origin)},
                 {"h", field.frame.h},
                 {"width", field.frame.width},
                 {"height", field.frame.height},
                 {"provenance", to_string(field.provenance)},
                 {"quantity", quantity},
                 {"dtype", "float64"},
                 {"byte_order", "little"},
                 {"layout", "row-major, first row at lowest y"}};
  std::string payload(field.values.size() * sizeof(double), '\0');
  std::memcpy(payload.data(), field.values.data(), payload.size());
  fs::path bin = base, hdr = base;
  bin += ".bin";
  hdr += ".json";
  write_file_atomic(bin, payload);
  write_file_atomic(hdr, dump(header));
}

DistanceField read_field(const fs::path& base) {
  fs::path bin = base, hdr = base;
  bin += ".bin";
  hdr += ".json";
  std::ifstream hs(hdr);
  if (!hs) throw std::runtime_error("cannot open " + hdr.string());
  const Json header = Json::parse(hs);
  DistanceField f;
  const auto origin = header.at("origin").get<std::vector<double>>();
  f.frame.origin = {origin.at(0), origin.at(1)};
  f.frame.h = header.at("h").get<double>();
  f.frame.width = header.at("width").get<int>();
  f.frame.height = header.at("height").get<int>();
  f.provenance = provenance_from_string(header.at("provenance").get<std::string>());
  f.values.resize(f.frame.size());
  std::ifstream bs(bin, std::ios::binary);
  bs.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!bs) throw std::runtime_error("truncated field payload " + bin.string());
  return f;
}

void write_pgm(const fs::path& path, const DistanceField& field) {
  double top = 0.0;
  for (double v : field.values)
    if (std::isfinite(v)) top = std::max(top, v);
  const double scale = top > 0.0 ? 65535.0 / top : 0.0;
  std::ostringstream os;
  os << "P5\n" << field.frame.width << ' ' << field.frame.height << "\n65535\n";
  std::string body;
  body.reserve(field.values.size() * 2);
  for (int j = field.frame.height - 1; j >= 0; --j)
    for (int i = 0; i < field.frame.width; ++i) {
      const double v = field.at(i, j);
      const auto q = std::isfinite(v) && v > 0.0
                         ? static_cast<std::uint16_t>(std::lround(std::min(v * scale, 65535.0)))
                         : std::uint16_t{0};
      body.push_back(static_cast<char>(q >> 8));
      body.push_back(static_cast<char>(q & 0xff));
    }
  write_file_atomic(path, os.str() + body);
}

}  // namespace infspec
