#pragma once

// Matrix files: {"n": 3, "mode": "float" | "rational", "entries": [...]}
// with entries in row-major order. Rational entries are strings ("p" or
// "p/q") or integers; float entries are numbers.

#include <optional>
#include <string>

#include <json.hpp>

#include "gword/linalg.hpp"
#include "gword/rational.hpp"

namespace gword {

struct MatrixFile {
  Matrix values;
  /// Present for rational-mode files.
  std::optional<RationalMatrix> exact;
};

MatrixFile parse_matrix_json(const nlohmann::json& j);
MatrixFile read_matrix_file(const std::string& path);

nlohmann::ordered_json matrix_to_json(const RationalMatrix& m);
nlohmann::ordered_json matrix_to_json(const Matrix& m);

}  // namespace gword
