#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fjc/trajectory.hpp"

namespace fjc::io {

inline constexpr const char* kTrajectoryHeader = "t,n_x,n_y,sigma_z,norm,N_total";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& s);

void write_trajectory_csv(std::ostream& out, const std::vector<ExpectationRecord>& records);
void write_trajectory_csv(const std::filesystem::path& path, const std::vector<ExpectationRecord>& records);

/// Throws std::runtime_error with the offending line number on malformed input.
std::vector<ExpectationRecord> read_trajectory_csv(std::istream& in);
std::vector<ExpectationRecord> read_trajectory_csv(const std::filesystem::path& path);

/// Generic table writer: header row then one row per entry of `rows`.
void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace fjc::io
