#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>

#include "lassopath/errors.hpp"

namespace lassopath {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

/// Reads a headerless CSV matrix: one observation per row, comma-separated.
/// Throws ParseError with file:line:col context on malformed input.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

/// Reads a response vector: one value per line.
Eigen::VectorXd read_vector_csv(const std::filesystem::path& path);

std::string matrix_csv(const Eigen::MatrixXd& matrix);
std::string vector_csv(const Eigen::VectorXd& vector);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lassopath
