#pragma once

#include "nussbaum_pid/simulation.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nussbaum_pid {

inline constexpr std::string_view csv_header =
    "t,q1,q2,qd1,qd2,dq1,dq2,e1,e2,u1,u2,tau1,tau2,Psi1,Psi2,zeta,N_zeta,kappa_delta,psi_hat_norm,v_track";

inline constexpr std::size_t csv_columns = 20;

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Exact inverse of format_double. Throws std::invalid_argument on malformed text.
double parse_double(std::string_view text);

std::vector<double> csv_row(const SimRecord &r);

void write_csv(std::ostream &out, std::span<const SimRecord> records);

/// Throws IoError when the file cannot be written.
void write_csv_file(const std::filesystem::path &path, std::span<const SimRecord> records);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Reads a table written by write_csv. Throws std::invalid_argument on ragged or malformed rows.
CsvTable read_csv(std::istream &in);

}  // namespace nussbaum_pid
