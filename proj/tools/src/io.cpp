#include "frontlab_cli/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "frontlab/errors.hpp"

namespace frontlab::cli {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int Table::column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

void write_csv(const std::filesystem::path& path, const Table& table) {
    std::ostringstream out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw ParseError("csv row width does not match the header: " +
                             path.string());
        }
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    write_text_file(path, out.str());
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (ch != '\r') {
            cell.push_back(ch);
        }
    }
    cells.push_back(cell);
    return cells;
}

} // namespace

Table read_csv(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    Table table;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split_line(line);
        if (!have_header) {
            table.columns = std::move(cells);
            have_header = true;
        } else {
            if (cells.size() != table.columns.size()) {
                throw ParseError("ragged csv row in " + path.string());
            }
            table.rows.push_back(std::move(cells));
        }
    }
    if (!have_header) throw ParseError("empty csv file: " + path.string());
    return table;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw ParseError("write failed for " + path.string());
}

} // namespace frontlab::cli
