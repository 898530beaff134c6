#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "totpos/matcore.hpp"

namespace totpos::io {

/// Rows of numbers with an optional header row of names. Fields are split on
/// commas when the line has any, otherwise on whitespace. Blank lines and
/// lines starting with '#' are skipped. A leading non-numeric field on every
/// data row is treated as a row name and dropped.
struct Table {
    std::vector<std::string> header;
    Matrix values;
};

Table parse_table(std::istream& in);

/// A square symmetric matrix read from dense CSV.
struct MatrixInput {
    std::string path;
    SymMatrix<double> matrix;
    std::vector<std::string> warnings;
    std::string checksum;  // FNV-1a 64 of the raw bytes, hex
};

/// Validates squareness and positive diagonal, symmetrizes by averaging and
/// warns when the asymmetry exceeds 1e-9 relative to the largest diagonal entry.
MatrixInput read_matrix(std::istream& in, const std::string& path = "<stdin>");
MatrixInput read_matrix_file(const std::string& path);

/// An n x p observation matrix, reduced to its sample covariance.
MatrixInput read_observations(std::istream& in, bool center, const std::string& path = "<stdin>");
MatrixInput read_observations_file(const std::string& path, bool center);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

void write_matrix_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& labels);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace totpos::io
