#include "eigensurf/matrix_io.hpp"

#include "eigensurf/multires.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace eigensurf {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(delim, start);
        std::string_view cell = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
        cells.push_back(trim(cell));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return cells;
}

std::string location(const fs::path& path, std::size_t line, std::size_t col) {
    return path.string() + ":" + std::to_string(line) + ": column " + std::to_string(col);
}

// Parses a finite double; returns false on anything else.
bool parse_number(std::string_view cell, double& out) {
    if (!cell.empty() && cell.front() == '+')
        cell.remove_prefix(1);
    if (cell.empty())
        return false;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::ifstream open_for_read(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_for_write(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot open '" + path.string() + "' for writing");
    return out;
}

} // namespace

TableFormat format_from_extension(const fs::path& path) {
    auto ext = path.extension().string();
    return (ext == ".tsv" || ext == ".tab") ? TableFormat::tsv : TableFormat::csv;
}

ExpressionMatrix load_matrix(const fs::path& path) {
    return load_matrix(path, format_from_extension(path));
}

ExpressionMatrix load_matrix(const fs::path& path, TableFormat format) {
    if (!fs::exists(path))
        throw InputError("no such file: '" + path.string() + "'");
    auto in = open_for_read(path);
    const char delim = format == TableFormat::tsv ? '\t' : ',';

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> labels;
    bool have_header = false;
    std::vector<std::string> ids;
    std::vector<double> data;
    std::unordered_map<std::string, std::size_t> first_seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        auto cells = split(line, delim);
        if (!have_header) {
            for (std::size_t c = 1; c < cells.size(); ++c)
                labels.emplace_back(cells[c]);
            if (labels.size() < 3)
                throw InputError(path.string() + ":" + std::to_string(line_no) +
                                 ": need at least 3 time columns, found " +
                                 std::to_string(labels.size()));
            have_header = true;
            continue;
        }
        if (cells.size() != labels.size() + 1)
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": ragged row with " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(labels.size() + 1));
        std::string id(cells[0]);
        if (id.empty())
            throw InputError(location(path, line_no, 1) + ": empty row id");
        if (auto [it, inserted] = first_seen.emplace(id, line_no); !inserted)
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": duplicate row id '" +
                             id + "' (first seen on line " + std::to_string(it->second) + ")");
        for (std::size_t c = 1; c < cells.size(); ++c) {
            double v = 0;
            if (!parse_number(cells[c], v))
                throw InputError(location(path, line_no, c + 1) + ": non-numeric cell '" +
                                 std::string(cells[c]) + "'");
            if (!std::isfinite(v))
                throw InputError(location(path, line_no, c + 1) + ": NaN/Inf cell '" +
                                 std::string(cells[c]) + "'");
            data.push_back(v);
        }
        ids.push_back(std::move(id));
    }
    if (!have_header)
        throw InputError("'" + path.string() + "' is empty");

    const long m = static_cast<long>(ids.size());
    const long n = static_cast<long>(labels.size());
    Eigen::MatrixXd values(m, n);
    for (long r = 0; r < m; ++r)
        for (long c = 0; c < n; ++c)
            values(r, c) = data[static_cast<std::size_t>(r * n + c)];
    return {std::move(ids), std::move(labels), std::move(values)};
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc())
        throw NumericalError("cannot format value");
    return std::string(buf, ptr);
}

void write_matrix(const ExpressionMatrix& matrix, const fs::path& path, TableFormat format) {
    const char delim = format == TableFormat::tsv ? '\t' : ',';
    auto out = open_for_write(path);
    out << "id";
    for (const auto& label : matrix.time_labels())
        out << delim << label;
    out << '\n';
    const auto& v = matrix.values();
    for (long r = 0; r < matrix.rows(); ++r) {
        out << matrix.row_ids()[static_cast<std::size_t>(r)];
        for (long c = 0; c < matrix.cols(); ++c)
            out << delim << format_double(v(r, c));
        out << '\n';
    }
    if (!out)
        throw InputError("failed writing '" + path.string() + "'");
}

void write_surface(const Surface& surface, const fs::path& path) {
    auto out = open_for_write(path);
    out << "# origin=" << surface.origin().row << ',' << surface.origin().col
        << " k=" << surface.window_size() << '\n';
    out << "# rows=" << surface.rows() << " cols=" << surface.cols() << '\n';
    const auto& v = surface.values();
    for (long r = 0; r < surface.rows(); ++r) {
        for (long c = 0; c < surface.cols(); ++c) {
            if (c)
                out << ',';
            out << format_double(v(r, c));
        }
        out << '\n';
    }
    if (!out)
        throw InputError("failed writing '" + path.string() + "'");
}

Surface read_surface(const fs::path& path) {
    if (!fs::exists(path))
        throw InputError("no such file: '" + path.string() + "'");
    auto in = open_for_read(path);
    std::string line1, line2;
    if (!std::getline(in, line1))
        throw InputError("'" + path.string() + "' is empty");

    GridPoint origin;
    int k = 0;
    long rows = 0, cols = 0;
    auto bad_header = [&](int which) {
        return InputError(path.string() + ":" + std::to_string(which) + ": malformed surface header");
    };
    {
        std::string l = std::string(trim(line1));
        char sep = 0;
        std::istringstream hs(l);
        std::string hash, origin_tok, k_tok;
        if (!(hs >> hash >> origin_tok >> k_tok) || hash != "#" ||
            origin_tok.rfind("origin=", 0) != 0 || k_tok.rfind("k=", 0) != 0)
            throw bad_header(1);
        std::istringstream os(origin_tok.substr(7));
        if (!(os >> origin.row >> sep >> origin.col) || sep != ',' || !os.eof())
            throw bad_header(1);
        std::istringstream ks(k_tok.substr(2));
        if (!(ks >> k) || !ks.eof())
            throw bad_header(1);
    }
    if (!std::getline(in, line2))
        throw bad_header(2);
    {
        std::istringstream hs{std::string(trim(line2))};
        std::string hash, rows_tok, cols_tok;
        if (!(hs >> hash >> rows_tok >> cols_tok) || hash != "#" ||
            rows_tok.rfind("rows=", 0) != 0 || cols_tok.rfind("cols=", 0) != 0)
            throw bad_header(2);
        std::istringstream rs(rows_tok.substr(5)), cs(cols_tok.substr(5));
        if (!(rs >> rows) || !(cs >> cols) || !rs.eof() || !cs.eof() || rows < 1 || cols < 1)
            throw bad_header(2);
    }

    Eigen::MatrixXd values(rows, cols);
    std::string line;
    long r = 0;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        if (r >= rows)
            throw InputError(path.string() + ":" + std::to_string(line_no) +
                             ": more grid rows than declared");
        auto cells = split(line, ',');
        if (static_cast<long>(cells.size()) != cols)
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": ragged row with " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(cols));
        for (long c = 0; c < cols; ++c) {
            double v = 0;
            auto cell = cells[static_cast<std::size_t>(c)];
            if (!parse_number(cell, v))
                throw InputError(location(path, line_no, static_cast<std::size_t>(c) + 1) +
                                 ": non-numeric cell '" + std::string(cell) + "'");
            if (!std::isfinite(v))
                throw InputError(location(path, line_no, static_cast<std::size_t>(c) + 1) +
                                 ": NaN/Inf cell");
            values(r, c) = v;
        }
        ++r;
    }
    if (r != rows)
        throw InputError(path.string() + ": expected " + std::to_string(rows) +
                         " grid rows, found " + std::to_string(r));
    return Surface(std::move(values), origin, k);
}

void write_report(const ComparisonReport& report, const fs::path& path) {
    auto out = open_for_write(path);
    out << report_to_json(report).dump(2) << '\n';
    if (!out)
        throw InputError("failed writing '" + path.string() + "'");
}

} // namespace eigensurf
