#include "fjc/io/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fjc::io {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), end);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const std::vector<ExpectationRecord>& records) {
  out << kTrajectoryHeader << '\n';
  for (const auto& r : records) {
    out << format_double(r.t) << ',' << format_double(r.n_x) << ',' << format_double(r.n_y) << ','
        << format_double(r.sigma_z) << ',' << format_double(r.norm) << ',' << format_double(r.N_total) << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const std::vector<ExpectationRecord>& records) {
  std::ofstream out = open_out(path);
  write_trajectory_csv(out, records);
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

std::vector<ExpectationRecord> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader)
    throw std::runtime_error("line 1: expected header '" + std::string(kTrajectoryHeader) + "'");
  std::vector<ExpectationRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 6> v{};
    std::size_t pos = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::size_t comma = line.find(',', pos);
      const bool last = k + 1 == v.size();
      if (last != (comma == std::string::npos))
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected 6 fields");
      try {
        v[k] = parse_double(line.substr(pos, last ? std::string::npos : comma - pos));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
      }
      pos = comma + 1;
    }
    out.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return out;
}

std::vector<ExpectationRecord> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  return read_trajectory_csv(in);
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  auto row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  row(header);
  for (const auto& r : rows) row(r);
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out = open_out(path);
  write_table_csv(out, header, rows);
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace fjc::io
