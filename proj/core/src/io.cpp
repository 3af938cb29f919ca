#include "lassopath/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace lassopath {

namespace {

// Parses one CSV line of doubles; col positions are 1-based for messages.
std::vector<double> parse_line(const std::string& line, const std::string& file,
                               int line_no) {
  std::vector<double> values;
  size_t pos = 0;
  while (true) {
    size_t next = line.find(',', pos);
    const std::string cell =
        line.substr(pos, next == std::string::npos ? next : next - pos);

    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    const char* stop = end;
    while (stop != begin && (*(stop - 1) == ' ' || *(stop - 1) == '\t')) --stop;

    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, stop, value);
    if (ec != std::errc() || ptr != stop || begin == stop) {
      throw ParseError(file, line_no, static_cast<int>(pos) + 1,
                       "expected a number, got '" + cell + "'");
    }
    values.push_back(value);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return values;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, 0, "cannot open file");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    rows.push_back(parse_line(line, path.string(), line_no));
    if (rows.size() > 1 && rows.back().size() != rows.front().size()) {
      throw ParseError(path.string(), line_no, 1,
                       "row has " + std::to_string(rows.back().size()) +
                           " columns, expected " +
                           std::to_string(rows.front().size()));
    }
  }
  if (rows.empty()) {
    throw ParseError(path.string(), 1, 1, "file contains no data");
  }
  Eigen::MatrixXd matrix(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) {
      matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return matrix;
}

Eigen::VectorXd read_vector_csv(const std::filesystem::path& path) {
  Eigen::MatrixXd matrix = read_matrix_csv(path);
  if (matrix.cols() != 1) {
    throw ParseError(path.string(), 1, 1,
                     "expected one value per line, got " +
                         std::to_string(matrix.cols()) + " columns");
  }
  return matrix.col(0);
}

std::string matrix_csv(const Eigen::MatrixXd& matrix) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(matrix(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string vector_csv(const Eigen::VectorXd& vector) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < vector.size(); ++i) {
    out << format_double(vector(i)) << '\n';
  }
  return out.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write file: " + path.string());
  }
  out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read file: " + path.string());
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace lassopath
