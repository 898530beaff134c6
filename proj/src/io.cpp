#include "totpos/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

namespace totpos::io {

namespace {

struct Field {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Field> split_fields(const std::string& line) {
    std::vector<Field> out;
    const bool commas = line.find(',') != std::string::npos;
    auto is_space = [](char c) { return c == ' ' || c == '\t'; };
    std::size_t pos = 0;
    while (pos <= line.size()) {
        if (commas) {
            std::size_t end = line.find(',', pos);
            if (end == std::string::npos) end = line.size();
            std::size_t a = pos;
            std::size_t b = end;
            while (a < b && is_space(line[a])) ++a;
            while (b > a && is_space(line[b - 1])) --b;
            out.push_back({line.substr(a, b - a), a + 1});
            pos = end + 1;
        } else {
            while (pos < line.size() && is_space(line[pos])) ++pos;
            if (pos >= line.size()) break;
            std::size_t end = pos;
            while (end < line.size() && !is_space(line[end])) ++end;
            out.push_back({line.substr(pos, end - pos), pos + 1});
            pos = end;
        }
    }
    return out;
}

std::optional<double> parse_number(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::string slurp(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    return slurp(in);
}

MatrixInput matrix_from_table(const Table& table, const std::string& bytes, const std::string& path,
                              const std::vector<std::size_t>& row_lines) {
    const Matrix& m = table.values;
    if (m.rows() != m.cols())
        throw ParseError(row_lines.empty() ? 1 : row_lines.back(), 1,
                         "matrix is not square (" + std::to_string(m.rows()) + " rows, " +
                             std::to_string(m.cols()) + " columns)");
    MatrixInput out;
    out.path = path;
    out.checksum = fnv1a_hex(bytes);
    for (Index i = 0; i < m.rows(); ++i)
        if (!(m(i, i) > 0.0))
            throw ParseError(row_lines[static_cast<std::size_t>(i)], static_cast<std::size_t>(i) + 1,
                             "diagonal entry is not positive");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * max_diagonal(m))
        out.warnings.push_back("input asymmetry " + format_double(asym) +
                               " exceeds 1e-9 relative; symmetrized by averaging");
    const Matrix avg = (m + m.transpose()) / 2.0;
    out.matrix = SymMatrix<double>(avg, table.header);
    return out;
}

Table parse_table_impl(std::istream& in, std::vector<std::size_t>& row_lines) {
    Table table;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t header_line = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<Field> fields = split_fields(line);

        if (!seen_content) {
            seen_content = true;
            // A header has no numeric field; an empty leading cell is allowed.
            bool names = true;
            for (std::size_t k = 0; k < fields.size(); ++k)
                names = names && !parse_number(fields[k].text) && (k == 0 || !fields[k].text.empty());
            if (names) {
                for (const Field& f : fields) table.header.push_back(unquote(f.text));
                if (!table.header.empty() && table.header.front().empty())
                    table.header.erase(table.header.begin());
                header_line = line_no;
                continue;
            }
        }

        std::size_t start = 0;
        if (fields.size() > 1 && !parse_number(fields.front().text)) start = 1;
        std::vector<double> row;
        for (std::size_t k = start; k < fields.size(); ++k) {
            const auto value = parse_number(fields[k].text);
            if (!value)
                throw ParseError(line_no, fields[k].column,
                                 "expected a number, found '" + fields[k].text + "'");
            row.push_back(*value);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(line_no, line.size() + 1,
                             "expected " + std::to_string(rows.front().size()) + " fields, found " +
                                 std::to_string(row.size()));
        rows.push_back(std::move(row));
        row_lines.push_back(line_no);
    }
    if (rows.empty() || rows.front().empty()) throw ParseError(line_no + 1, 1, "no numeric rows");
    const auto n = static_cast<Index>(rows.size());
    const auto p = static_cast<Index>(rows.front().size());
    if (!table.header.empty() && static_cast<Index>(table.header.size()) != p)
        throw ParseError(header_line, 1,
                         "header has " + std::to_string(table.header.size()) + " names for " +
                             std::to_string(p) + " columns");
    table.values.resize(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) table.values(i, j) = rows[i][j];
    return table;
}

}  // namespace

Table parse_table(std::istream& in) {
    std::vector<std::size_t> row_lines;
    return parse_table_impl(in, row_lines);
}

MatrixInput read_matrix(std::istream& in, const std::string& path) {
    const std::string bytes = slurp(in);
    std::istringstream stream(bytes);
    std::vector<std::size_t> row_lines;
    const Table table = parse_table_impl(stream, row_lines);
    return matrix_from_table(table, bytes, path, row_lines);
}

MatrixInput read_matrix_file(const std::string& path) {
    std::istringstream in(read_file(path));
    return read_matrix(in, path);
}

MatrixInput read_observations(std::istream& in, bool center, const std::string& path) {
    const std::string bytes = slurp(in);
    std::istringstream stream(bytes);
    std::vector<std::size_t> row_lines;
    const Table table = parse_table_impl(stream, row_lines);
    MatrixInput out;
    out.path = path;
    out.checksum = fnv1a_hex(bytes);
    const Matrix s = sample_covariance(table.values, center);
    for (Index i = 0; i < s.rows(); ++i)
        if (!(s(i, i) > 0.0))
            throw ParseError(row_lines.front(), static_cast<std::size_t>(i) + 1,
                             "column has zero variance");
    out.matrix = SymMatrix<double>(s, table.header);
    return out;
}

MatrixInput read_observations_file(const std::string& path, bool center) {
    std::istringstream in(read_file(path));
    return read_observations(in, center, path);
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& labels) {
    if (!labels.empty()) {
        for (std::size_t k = 0; k < labels.size(); ++k) out << (k ? "," : "") << labels[k];
        out << '\n';
    }
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
        out << '\n';
    }
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace totpos::io
