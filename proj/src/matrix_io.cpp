#include "qrange/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qrange/error.hpp"

namespace qrange {

namespace {

std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t t = 0; t < byte && t < text.size(); ++t) {
    if (text[t] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double finite_number(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError(where + ": NaN or infinite value");
  return d;
}

}  // namespace

Quaternion quaternion_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw InputError("quaternion must be an array [w, x, y, z]");
  return {finite_number(j[0], "w"), finite_number(j[1], "x"), finite_number(j[2], "y"), finite_number(j[3], "z")};
}

nlohmann::json quaternion_to_json(const Quaternion& q) { return nlohmann::json::array({q.w, q.x, q.y, q.z}); }

QMatrix parse_matrix_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw InputError("matrix file parse error at " + locate(text, byte) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("matrix file: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("matrix file: top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw InputError("matrix file: missing integer field \"n\"");
  const auto n_signed = doc["n"].get<long long>();
  if (n_signed < 1) throw InputError("matrix file: n must be at least 1");
  const auto n = static_cast<std::size_t>(n_signed);
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw InputError("matrix file: missing array \"entries\"");
  const auto& rows = doc["entries"];
  if (rows.size() != n) throw InputError("matrix file: expected " + std::to_string(n) + " rows");
  std::vector<Quaternion> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw InputError("matrix file: row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      try {
        e.push_back(quaternion_from_json(row[j]));
      } catch (const InputError& err) {
        throw InputError("matrix file: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + err.what());
      }
    }
  }
  return QMatrix(n, std::move(e));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QMatrix load_matrix(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_matrix_json(text);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

nlohmann::json matrix_to_json(const QMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.size(); ++j) row.push_back(quaternion_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n", a.size()}, {"entries", std::move(rows)}};
}

}  // namespace qrange
