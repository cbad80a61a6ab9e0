#include "gword/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "gword/error.hpp"

namespace gword {

MatrixFile parse_matrix_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw Error(ErrorCode::SyntaxError, "matrix file needs \"n\" and \"entries\"");
  if (!j.at("n").is_number_unsigned() || j.at("n").get<std::size_t>() == 0)
    throw Error(ErrorCode::SyntaxError, "\"n\" must be a positive integer");
  const auto n = j.at("n").get<std::size_t>();
  const std::string mode = j.value("mode", std::string("float"));
  if (mode != "float" && mode != "rational")
    throw Error(ErrorCode::SyntaxError, "\"mode\" must be \"float\" or \"rational\"");
  const auto& e = j.at("entries");
  if (!e.is_array() || e.size() != n * n)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n * n) + " entries");

  MatrixFile out;
  out.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (mode == "rational") {
    std::vector<Rational> q;
    q.reserve(n * n);
    for (const auto& v : e) {
      if (v.is_string())
        q.push_back(parse_rational(v.get<std::string>()));
      else if (v.is_number_integer())
        q.emplace_back(v.get<long>());
      else
        throw Error(ErrorCode::SyntaxError, "rational entries must be strings or integers");
    }
    out.exact = RationalMatrix(n, std::move(q));
    out.values = out.exact->to_double();
  } else {
    for (std::size_t k = 0; k < n * n; ++k) {
      if (!e[k].is_number()) throw Error(ErrorCode::SyntaxError, "float entries must be numbers");
      out.values(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = e[k].get<double>();
    }
  }
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::SyntaxError, path + ": " + ex.what());
  }
  return parse_matrix_json(j);
}

nlohmann::ordered_json matrix_to_json(const RationalMatrix& m) {
  nlohmann::ordered_json j;
  j["n"] = m.dim();
  j["mode"] = "rational";
  auto entries = nlohmann::ordered_json::array();
  for (const auto& q : m.entries()) entries.push_back(to_string(q));
  j["entries"] = std::move(entries);
  return j;
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
  nlohmann::ordered_json j;
  j["n"] = m.rows();
  j["mode"] = "float";
  auto entries = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(m(i, k));
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace gword
