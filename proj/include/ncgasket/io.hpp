#pragma once

// JSON and CSV serialization.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "classical.hpp"
#include "energy.hpp"
#include "zeta.hpp"

namespace ncgasket {

using Json = nlohmann::ordered_json;

inline constexpr int kElementSchemaVersion = 1;

// Shortest representation that round-trips.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json element_to_json(const GasketElement& e) {
  Json j;
  j["schema"] = kElementSchemaVersion;
  j["level"] = e.level();
  j["xi"] = Json::array();
  for (int q = 1; q <= 3; ++q) j["xi"].push_back(complex_to_json(e.xi(q)));
  j["blocks"] = Json::array();
  for (int k = 0; k < e.level(); ++k)
    for (int q = 1; q <= 3; ++q) {
      const auto& m = e.block(k, q);
      if (m.isZero(0.0)) continue;
      Json rows = Json::array();
      for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
      }
      j["blocks"].push_back(Json{{"k", k}, {"j", q}, {"matrix", std::move(rows)}});
    }
  return j;
}

namespace detail {

inline const Json& require_field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

inline int read_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<int>();
}

inline Complex read_complex(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw SchemaError(path, "expected [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace detail

inline GasketElement element_from_json(const Json& j) {
  using detail::require_field;
  const int schema = detail::read_int(require_field(j, "schema", ""), "/schema");
  if (schema != kElementSchemaVersion)
    throw SchemaError("/schema", "unsupported schema version " + std::to_string(schema) + " (expected " +
                                     std::to_string(kElementSchemaVersion) + ")");
  const int n = detail::read_int(require_field(j, "level", ""), "/level");
  if (n < 0 || n > 12) throw SchemaError("/level", "level out of range");
  GasketElement e(n);
  const Json& xi = require_field(j, "xi", "");
  if (!xi.is_array() || xi.size() != 3) throw SchemaError("/xi", "expected 3 entries");
  for (int q = 0; q < 3; ++q) e.set_xi(q + 1, detail::read_complex(xi[static_cast<std::size_t>(q)], "/xi/" + std::to_string(q)));
  const Json& blocks = require_field(j, "blocks", "");
  if (!blocks.is_array()) throw SchemaError("/blocks", "expected an array");
  std::vector<bool> seen(static_cast<std::size_t>(3 * n), false);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string path = "/blocks/" + std::to_string(b);
    const int k = detail::read_int(require_field(blocks[b], "k", path), path + "/k");
    const int q = detail::read_int(require_field(blocks[b], "j", path), path + "/j");
    if (k < 0 || k >= n) throw SchemaError(path + "/k", "block index outside 0.." + std::to_string(n - 1));
    if (q < 1 || q > 3) throw SchemaError(path + "/j", "block index must be 1, 2 or 3");
    const auto slot = static_cast<std::size_t>(3 * k + q - 1);
    if (seen[slot]) throw SchemaError(path, "duplicate block");
    seen[slot] = true;
    const Json& rows = require_field(blocks[b], "matrix", path);
    const Index dim = pow3(k);
    if (!rows.is_array() || static_cast<Index>(rows.size()) != dim)
      throw SchemaError(path + "/matrix", "expected " + std::to_string(dim) + " rows");
    ComplexMatrix m(dim, dim);
    for (Index r = 0; r < dim; ++r) {
      const std::string rp = path + "/matrix/" + std::to_string(r);
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Index>(row.size()) != dim)
        throw SchemaError(rp, "expected " + std::to_string(dim) + " entries");
      for (Index c = 0; c < dim; ++c) m(r, c) = detail::read_complex(row[static_cast<std::size_t>(c)], rp + "/" + std::to_string(c));
    }
    e.set_block(k, q, m);
  }
  return e;
}

inline GasketElement parse_element(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw SchemaError("", std::string("invalid JSON: ") + err.what());
  }
  return element_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

inline GasketElement load_element(const std::string& path) { return parse_element(read_file(path)); }

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json energy_report_to_json(const EnergyReport& r) {
  return Json{{"level", r.level},
              {"energy", r.energy},
              {"renormalized", r.renormalized},
              {"per_pair", Json::array({r.per_pair[0], r.per_pair[1], r.per_pair[2]})}};
}

// Columns s, partial_sum, tail_corrected, cutoff carry real parts; the
// imaginary parts follow so complex weights survive the round trip.
inline std::string zeta_profile_to_csv(const ZetaProfile& p) {
  std::string out = "s,partial_sum,tail_corrected,cutoff,partial_sum_imag,tail_corrected_imag\n";
  for (std::size_t i = 0; i < p.s_grid.size(); ++i) {
    out += format_double(p.s_grid[i]) + "," + format_double(p.partial_sums[i].real()) + "," +
           format_double(p.tail_corrected[i].real()) + "," + std::to_string(p.cutoff) + "," +
           format_double(p.partial_sums[i].imag()) + "," + format_double(p.tail_corrected[i].imag()) + "\n";
  }
  return out;
}

inline std::string vertices_to_csv(int n) {
  std::string out = "label,x,y,age\n";
  for (const auto& v : enumerate_vertices(n)) {
    const Point2 p = label_to_point(v);
    out += v.str() + "," + format_double(p.x) + "," + format_double(p.y) + "," + std::to_string(vertex_age(v)) + "\n";
  }
  return out;
}

}  // namespace ncgasket
