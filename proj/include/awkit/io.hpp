#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "awkit/errors.hpp"
#include "awkit/matrix.hpp"
#include "awkit/scalar.hpp"
#include "awkit/tolerances.hpp"

namespace awkit {

enum class FileFormat { Json, Csv };

/// A matrix loaded from disk, remembering which field the file declared.
/// JSON files carry either field; CSV files are real-only.
struct MatrixFile {
  Field field = Field::Real;
  Matrix<double> real_data;
  Matrix<cplx> complex_data;

  std::size_t rows() const {
    return field == Field::Real ? real_data.rows() : complex_data.rows();
  }
  std::size_t cols() const {
    return field == Field::Real ? real_data.cols() : complex_data.cols();
  }

  /// Widening view: real data promotes to complex losslessly.
  Matrix<cplx> as_complex() const {
    if (field == Field::Complex) return complex_data;
    Matrix<cplx> m(real_data.rows(), real_data.cols());
    for (std::size_t i = 0; i < real_data.rows(); ++i)
      for (std::size_t j = 0; j < real_data.cols(); ++j)
        m(i, j) = cplx{real_data(i, j), 0.0};
    return m;
  }

  /// Narrowing view: complex data is accepted only when every imaginary
  /// part is negligible against the matrix scale.
  Matrix<double> as_real() const {
    if (field == Field::Real) return real_data;
    const double cut = kAsymmetryRejection * scale_of(complex_data);
    Matrix<double> m(complex_data.rows(), complex_data.cols());
    for (std::size_t i = 0; i < complex_data.rows(); ++i)
      for (std::size_t j = 0; j < complex_data.cols(); ++j) {
        if (std::abs(complex_data(i, j).imag()) > cut)
          throw InvalidMatrixError("matrix has non-negligible imaginary parts");
        m(i, j) = complex_data(i, j).real();
      }
    return m;
  }
};

inline nlohmann::json to_json(const Matrix<double>& m) {
  auto entries = nlohmann::json::array();
  for (const double v : m.entries()) entries.push_back(v);
  return {{"field", "real"}, {"rows", m.rows()}, {"cols", m.cols()},
          {"entries", std::move(entries)}};
}

inline nlohmann::json to_json(const Matrix<cplx>& m) {
  auto entries = nlohmann::json::array();
  for (const cplx& v : m.entries())
    entries.push_back(nlohmann::json::array({v.real(), v.imag()}));
  return {{"field", "complex"}, {"rows", m.rows()}, {"cols", m.cols()},
          {"entries", std::move(entries)}};
}

inline MatrixFile matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("matrix JSON must be an object");
  for (const char* key : {"field", "rows", "cols", "entries"})
    if (!j.contains(key))
      throw ParseError(std::string("matrix JSON missing key: ") + key);
  if (!j["field"].is_string() || !j["rows"].is_number_unsigned() ||
      !j["cols"].is_number_unsigned() || !j["entries"].is_array())
    throw ParseError("matrix JSON has wrongly typed keys");
  const std::string field = j["field"].get<std::string>();
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const auto& entries = j["entries"];
  if (entries.size() != rows * cols)
    throw ParseError("entry count does not match declared shape");
  MatrixFile f;
  if (field == "real") {
    f.field = Field::Real;
    std::vector<double> vals;
    vals.reserve(entries.size());
    for (const auto& e : entries) {
      if (!e.is_number()) throw ParseError("real entries must be numbers");
      vals.push_back(e.get<double>());
    }
    f.real_data = Matrix<double>(rows, cols, std::move(vals));
  } else if (field == "complex") {
    f.field = Field::Complex;
    std::vector<cplx> vals;
    vals.reserve(entries.size());
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("complex entries must be [re, im] pairs");
      vals.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    f.complex_data = Matrix<cplx>(rows, cols, std::move(vals));
  } else {
    throw ParseError("field must be \"real\" or \"complex\"");
  }
  return f;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << body;
  out.flush();
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace detail

inline std::string to_csv(const Matrix<double>& m) {
  std::string body;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) body += ',';
      body += detail::format_double(m(i, j));
    }
    body += '\n';
  }
  return body;
}

inline Matrix<double> matrix_from_csv(const std::string& text) {
  std::vector<double> vals;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t row_cols = 0;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) throw ParseError("trailing junk in csv cell");
        vals.push_back(v);
      } catch (const std::invalid_argument&) {
        throw ParseError("unparsable csv cell: " + cell);
      } catch (const std::out_of_range&) {
        throw ParseError("csv cell out of range: " + cell);
      }
      ++row_cols;
    }
    if (rows == 0)
      cols = row_cols;
    else if (row_cols != cols)
      throw ParseError("csv rows have inconsistent lengths");
    ++rows;
  }
  if (rows == 0) throw ParseError("csv file holds no data");
  return Matrix<double>(rows, cols, std::move(vals));
}

/// Picks the on-disk format: an explicit choice wins, otherwise a .csv
/// suffix selects CSV and everything else is treated as JSON.
inline FileFormat format_for_path(const std::string& path,
                                  std::optional<FileFormat> forced = {}) {
  if (forced) return *forced;
  std::string ext;
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) ext = path.substr(dot);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? FileFormat::Csv : FileFormat::Json;
}

inline MatrixFile load_matrix(const std::string& path,
                              std::optional<FileFormat> format = {}) {
  const std::string body = detail::read_file(path);
  if (format_for_path(path, format) == FileFormat::Csv) {
    MatrixFile f;
    f.field = Field::Real;
    f.real_data = matrix_from_csv(body);
    return f;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

inline void save_matrix(const std::string& path, const Matrix<double>& m,
                        std::optional<FileFormat> format = {}) {
  if (format_for_path(path, format) == FileFormat::Csv)
    detail::write_file(path, to_csv(m));
  else
    detail::write_file(path, to_json(m).dump(2) + "\n");
}

inline void save_matrix(const std::string& path, const Matrix<cplx>& m,
                        std::optional<FileFormat> format = {}) {
  if (format_for_path(path, format) == FileFormat::Csv)
    throw DomainError("csv files cannot carry complex entries; use json");
  detail::write_file(path, to_json(m).dump(2) + "\n");
}

}  // namespace awkit
