#ifndef POBK_MATRIX_MARKET_HPP
#define POBK_MATRIX_MARKET_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pobk/sparse.hpp"

namespace pobk::mm {

/// Matrix Market coordinate reader and writer.
///
/// Accepted header: `%%MatrixMarket matrix coordinate {real|integer}
/// {general|symmetric}`. Symmetric files store one triangle; the other is
/// mirrored on load. Duplicate coordinates are summed and explicit zeros
/// dropped.

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t b = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > b) out.push_back(line.substr(b, i - b));
    }
    return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
    // from_chars rejects a leading '+', which some writers emit
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

inline bool blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

} // namespace detail

enum class Field { real, integer };
enum class Symmetry { general, symmetric };

struct Header {
    Field field = Field::real;
    Symmetry symmetry = Symmetry::general;
};

inline Header parse_header(std::string_view line, std::size_t line_no) {
    const auto tok = detail::split(line);
    if (tok.empty() || detail::lower(tok[0]) != "%%matrixmarket")
        throw parse_error(line_no, "missing %%MatrixMarket banner");
    if (tok.size() != 5) throw parse_error(line_no, "banner must have 5 fields");
    if (detail::lower(tok[1]) != "matrix") throw parse_error(line_no, "object must be 'matrix'");
    const auto format = detail::lower(tok[2]);
    if (format == "array") throw unsupported_format(line_no, "dense 'array' format is not supported");
    if (format != "coordinate") throw parse_error(line_no, "unknown format '" + format + "'");

    Header h;
    const auto field = detail::lower(tok[3]);
    if (field == "real" || field == "double") h.field = Field::real;
    else if (field == "integer") h.field = Field::integer;
    else if (field == "complex") throw unsupported_format(line_no, "complex field is not supported");
    else if (field == "pattern") throw unsupported_format(line_no, "pattern field is not supported");
    else throw parse_error(line_no, "unknown field '" + field + "'");

    const auto sym = detail::lower(tok[4]);
    if (sym == "general") h.symmetry = Symmetry::general;
    else if (sym == "symmetric") h.symmetry = Symmetry::symmetric;
    else if (sym == "skew-symmetric" || sym == "hermitian")
        throw unsupported_format(line_no, "symmetry '" + sym + "' is not supported");
    else throw parse_error(line_no, "unknown symmetry '" + sym + "'");
    return h;
}

inline SparseMatrix read(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw parse_error(1, "empty input");
    ++line_no;
    const Header header = parse_header(line, line_no);

    // size line, after comments and blank lines
    std::size_t nrows = 0, ncols = 0, declared = 0;
    for (;;) {
        if (!std::getline(in, line)) throw parse_error(line_no + 1, "missing size line");
        ++line_no;
        if (detail::blank(line) || line.front() == '%') continue;
        const auto tok = detail::split(line);
        if (tok.size() != 3 || !detail::parse_number(tok[0], nrows) || !detail::parse_number(tok[1], ncols) ||
            !detail::parse_number(tok[2], declared))
            throw parse_error(line_no, "size line must be 'rows cols entries'");
        break;
    }
    if (header.symmetry == Symmetry::symmetric && nrows != ncols)
        throw parse_error(line_no, "symmetric matrix must be square");

    std::vector<Triplet> entries;
    entries.reserve(header.symmetry == Symmetry::symmetric ? 2 * declared : declared);
    std::size_t seen = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::blank(line) || line.front() == '%') continue;
        if (seen == declared) throw parse_error(line_no, "more entries than the declared " + std::to_string(declared));
        const auto tok = detail::split(line);
        if (tok.size() != 3) throw parse_error(line_no, "entry must be 'row col value'");
        std::size_t i = 0, j = 0;
        if (!detail::parse_number(tok[0], i) || !detail::parse_number(tok[1], j))
            throw parse_error(line_no, "bad index");
        if (i < 1 || i > nrows || j < 1 || j > ncols)
            throw parse_error(line_no, "index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
        double v = 0.0;
        if (header.field == Field::integer) {
            std::int64_t iv = 0;
            if (!detail::parse_number(tok[2], iv)) throw parse_error(line_no, "bad integer value");
            v = static_cast<double>(iv);
        } else if (!detail::parse_number(tok[2], v)) {
            throw parse_error(line_no, "bad real value");
        }
        entries.push_back({i - 1, j - 1, v});
        if (header.symmetry == Symmetry::symmetric && i != j) entries.push_back({j - 1, i - 1, v});
        ++seen;
    }
    if (seen != declared)
        throw parse_error(line_no + 1, "expected " + std::to_string(declared) + " entries, found " + std::to_string(seen));
    return SparseMatrix::from_triplets(nrows, ncols, std::move(entries));
}

inline SparseMatrix read_string(const std::string& text) {
    std::istringstream in(text);
    return read(in);
}

inline SparseMatrix read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path.string());
    return read(in);
}

/// Writes `general` coordinate form with round-trip precision.
inline void write(std::ostream& out, const SparseMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
    out << std::setprecision(17);
    for (index_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        for (std::size_t p = 0; p < r.size(); ++p) out << i + 1 << ' ' << r.cols[p] + 1 << ' ' << r.values[p] << '\n';
    }
}

inline void write_file(const std::filesystem::path& path, const SparseMatrix& a) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path.string());
    write(out, a);
}

} // namespace pobk::mm

#endif // POBK_MATRIX_MARKET_HPP
