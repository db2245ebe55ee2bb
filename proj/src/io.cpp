#include "polyimage/io.hpp"

#include <sstream>

#include <json.hpp>

#include "polyimage/errors.hpp"

namespace polyimage {

namespace {

using json = nlohmann::json;

// Byte offset of the first string literal equal to `token`, or 0.
std::size_t offset_of_string(std::string_view text, const std::string& token) {
  const std::string quoted = json(token).dump();
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : pos + 1;
}

// Byte offset of the first occurrence of `"key"`, or 0.
std::size_t offset_of_key(std::string_view text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string_view::npos ? 0 : pos;
}

[[noreturn]] void structure_error(std::string_view text, const std::string& key,
                                  const std::string& why) {
  const std::size_t at = offset_of_key(text, key);
  throw ParseError("invalid document: " + why, key, at);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    std::string token;
    const std::string marker = "last read: '";
    if (const auto p = what.find(marker); p != std::string::npos) {
      const auto start = p + marker.size();
      token = what.substr(start, what.find('\'', start) - start);
    }
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("malformed JSON: " + what, token, at);
  }
}

const json& member(std::string_view text, const json& obj, const std::string& key) {
  if (!obj.is_object()) structure_error(text, key, "expected an object holding \"" + key + "\"");
  const auto it = obj.find(key);
  if (it == obj.end()) structure_error(text, key, "missing key \"" + key + "\"");
  return *it;
}

std::size_t parse_size(std::string_view text, const json& obj, const std::string& key) {
  const json& v = member(text, obj, key);
  if (!v.is_number_unsigned()) structure_error(text, key, "\"" + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

Rational parse_rational(std::string_view text, const json& v, const std::string& context) {
  if (!v.is_string()) {
    const std::string token = v.dump();
    const auto pos = text.find(token);
    const std::size_t at = pos == std::string_view::npos ? 0 : pos;
    throw ParseError("expected a rational string for " + context + ", got " + token, token, at);
  }
  const std::string token = v.get<std::string>();
  try {
    return Rational::parse(token);
  } catch (const ParseError& e) {
    const std::size_t at = offset_of_string(text, token);
    throw ParseError(std::string(e.what()) + " in " + context, token, at);
  }
}

QVector parse_vector(std::string_view text, const json& v, std::size_t dim, const std::string& context) {
  if (!v.is_array()) structure_error(text, "a", context + " must be an array");
  if (v.size() != dim) {
    structure_error(text, "a", context + " has " + std::to_string(v.size()) +
                                   " entries, expected " + std::to_string(dim));
  }
  QVector out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = parse_rational(text, v[i], context);
  return out;
}

IneqRow parse_row(std::string_view text, const json& r, std::size_t dim, const std::string& context) {
  IneqRow row;
  row.a = parse_vector(text, member(text, r, "a"), dim, context + " coefficients");
  row.b = parse_rational(text, member(text, r, "b"), context + " bound");
  return row;
}

std::string quoted(const Rational& r) { return "\"" + r.str() + "\""; }

std::string format_row(const IneqRow& row) {
  std::ostringstream os;
  os << "{\"a\": [";
  for (std::size_t i = 0; i < row.a.dim(); ++i) os << (i ? ", " : "") << quoted(row.a[i]);
  os << "], \"b\": " << quoted(row.b) << '}';
  return os.str();
}

void format_rows(std::ostringstream& os, const HPolyhedron& p) {
  os << "{\n  \"dim\": " << p.dim() << ",\n  \"rows\": [";
  for (std::size_t k = 0; k < p.size(); ++k) {
    os << (k ? ",\n    " : "\n    ") << format_row(p.row(k));
  }
  os << (p.size() ? "\n  ]" : "]");
}

}  // namespace

HPolyhedron parse_polyhedron(std::string_view text) {
  const json doc = parse_json(text);
  const std::size_t dim = parse_size(text, doc, "dim");
  const json& rows = member(text, doc, "rows");
  if (!rows.is_array()) structure_error(text, "rows", "\"rows\" must be an array");
  std::vector<IneqRow> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.push_back(parse_row(text, rows[k], dim, "row " + std::to_string(k)));
  }
  return HPolyhedron(dim, std::move(out));
}

LinMap parse_map(std::string_view text) {
  const json doc = parse_json(text);
  const std::size_t m = parse_size(text, doc, "rows");
  const std::size_t n = parse_size(text, doc, "cols");
  const json& data = member(text, doc, "data");
  if (!data.is_array() || data.size() != m) {
    structure_error(text, "data", "\"data\" must be an array of " + std::to_string(m) + " rows");
  }
  QMatrix mat(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    const json& row = data[r];
    if (!row.is_array() || row.size() != n) {
      structure_error(text, "data", "map row " + std::to_string(r) + " must have " +
                                        std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      mat(r, c) = parse_rational(text, row[c], "map entry (" + std::to_string(r) + "," +
                                                    std::to_string(c) + ")");
    }
  }
  return LinMap{std::move(mat)};
}

std::vector<std::pair<IneqRow, Certificate>> parse_certificates(std::string_view text) {
  const json doc = parse_json(text);
  const std::size_t dim = parse_size(text, doc, "dim");
  std::vector<std::pair<IneqRow, Certificate>> out;
  const auto it = doc.find("certificates");
  if (it == doc.end()) return out;
  if (!it->is_array()) structure_error(text, "certificates", "\"certificates\" must be an array");
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& entry = (*it)[k];
    const std::string context = "certificate " + std::to_string(k);
    IneqRow row = parse_row(text, member(text, entry, "row"), dim, context + " row");
    const json& mults = member(text, entry, "multipliers");
    if (!mults.is_array()) structure_error(text, "multipliers", "\"multipliers\" must be an array");
    Certificate cert;
    for (const json& m : mults) {
      const std::size_t index = parse_size(text, m, "index");
      cert.multipliers.emplace_back(
          index, parse_rational(text, member(text, m, "coeff"), context + " multiplier"));
    }
    std::stable_sort(cert.multipliers.begin(), cert.multipliers.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    out.emplace_back(std::move(row), std::move(cert));
  }
  return out;
}

QVector parse_point(std::string_view text) {
  std::vector<Rational> entries;
  if (text.empty()) return QVector{};
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const std::string_view token = text.substr(start, comma - start);
    try {
      entries.push_back(Rational::parse(token));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " in point", std::string(token), start);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return QVector(std::move(entries));
}

std::string format_polyhedron(const HPolyhedron& p) {
  std::ostringstream os;
  format_rows(os, p);
  os << "\n}\n";
  return os.str();
}

std::string format_certified(const CertifiedPolyhedron& result) {
  std::ostringstream os;
  format_rows(os, result.polyhedron);
  os << ",\n  \"certificates\": [";
  const auto& certs = result.certificates;
  for (std::size_t k = 0; k < certs.size(); ++k) {
    os << (k ? ",\n    " : "\n    ") << "{\"row\": " << format_row(result.polyhedron.row(k))
       << ", \"multipliers\": [";
    const auto& mults = certs[k].multipliers;
    for (std::size_t i = 0; i < mults.size(); ++i) {
      os << (i ? ", " : "") << "{\"index\": " << mults[i].first
         << ", \"coeff\": " << quoted(mults[i].second) << '}';
    }
    os << "]}";
  }
  os << (certs.empty() ? "]" : "\n  ]") << "\n}\n";
  return os.str();
}

}  // namespace polyimage
