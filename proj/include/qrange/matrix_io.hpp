#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qrange/qmatrix.hpp"

namespace qrange {

/// Parses {"n": int, "entries": [[[w,x,y,z], ...], ...]} (row-major).
/// Syntax errors report line and column; NaN/Inf and shape mismatches are rejected.
QMatrix parse_matrix_json(std::string_view text);

QMatrix load_matrix(const std::filesystem::path& path);

nlohmann::json quaternion_to_json(const Quaternion& q);
Quaternion quaternion_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const QMatrix& a);

/// Whole file as a string; throws InputError if unreadable.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace qrange
