#include "nussbaum_pid/csv.hpp"

#include "nussbaum_pid/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace nussbaum_pid {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("csv: malformed number '" + std::string(text) + "'");
    }
    return v;
}

std::vector<double> csv_row(const SimRecord &r) {
    return {r.t,      r.q[0],   r.q[1],   r.qd[0],  r.qd[1],   r.dq[0],       r.dq[1],
            r.e[0],   r.e[1],   r.u[0],   r.u[1],   r.tau[0],  r.tau[1],      r.psi[0],
            r.psi[1], r.zeta,   r.n_zeta, r.kappa_delta,       r.psi_hat_norm, r.v_track};
}

void write_csv(std::ostream &out, std::span<const SimRecord> records) {
    out << csv_header << '\n';
    std::string line;
    for (const SimRecord &r : records) {
        line.clear();
        const auto row = csv_row(r);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += ',';
            line += format_double(row[i]);
        }
        line += '\n';
        out << line;
    }
}

void write_csv_file(const std::filesystem::path &path, std::span<const SimRecord> records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_csv(out, records);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

CsvTable read_csv(std::istream &in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("csv: missing header");
    }
    for (auto name : split(line)) {
        table.columns.emplace_back(name);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != table.columns.size()) {
            throw std::invalid_argument("csv: ragged row");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (auto cell : cells) {
            row.push_back(parse_double(cell));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace nussbaum_pid
