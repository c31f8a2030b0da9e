#include "conjsynth/trace_io.hpp"

#include "conjsynth/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace conjsynth {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cells.push_back(trim(cell));
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw evaluation_error("trace CSV line " + std::to_string(line_no) +
                           ": not a number: '" + cell + "'");
  }
  return value;
}

} // namespace

Trace read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_row(line);
      break;
    }
  }
  if (header.empty() || header.front() != "time") {
    throw evaluation_error("trace CSV must start with a header whose first column is 'time'");
  }
  std::vector<std::string> names(header.begin() + 1, header.end());
  std::vector<double> times;
  std::vector<std::vector<double>> cols(names.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw evaluation_error("trace CSV line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
    }
    times.push_back(parse_number(cells[0], line_no));
    for (std::size_t i = 0; i < names.size(); ++i) {
      cols[i].push_back(parse_number(cells[i + 1], line_no));
    }
  }
  if (times.size() < 2) {
    throw evaluation_error("trace CSV needs at least two samples to fix the step");
  }
  if (times.front() != 0.0) {
    throw evaluation_error("trace CSV times must start at 0");
  }
  const double step = times[1] - times[0];
  if (!(step > 0.0)) {
    throw evaluation_error("trace CSV times must be strictly increasing");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (std::abs(times[k] - static_cast<double>(k) * step) > 1e-6 * step) {
      throw evaluation_error("trace CSV times are not uniformly spaced at sample " +
                             std::to_string(k));
    }
  }
  return Trace(std::move(names), step, std::move(cols));
}

Trace read_trace_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw evaluation_error("cannot open trace file '" + path + "'");
  }
  return read_trace_csv(in);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "time";
  for (const auto& name : trace.variables()) {
    out << ',' << name;
  }
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out << trace.time(k);
    for (std::size_t i = 0; i < trace.variables().size(); ++i) {
      out << ',' << trace.column(i)[k];
    }
    out << '\n';
  }
}

} // namespace conjsynth
