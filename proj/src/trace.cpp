#include "conjsynth/trace.hpp"

#include "conjsynth/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace conjsynth {

Trace::Trace(std::vector<std::string> variables, double step,
             std::vector<std::vector<double>> columns)
    : variables_(std::move(variables)), step_(step), columns_(std::move(columns)) {
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw evaluation_error("trace step must be positive and finite");
  }
  if (variables_.size() != columns_.size()) {
    throw evaluation_error("trace has " + std::to_string(variables_.size()) +
                           " names but " + std::to_string(columns_.size()) + " columns");
  }
  std::set<std::string_view> seen;
  for (const auto& name : variables_) {
    if (!seen.insert(name).second) {
      throw evaluation_error("duplicate trace variable '" + name + "'");
    }
  }
  if (!columns_.empty()) {
    size_ = columns_.front().size();
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (columns_[i].size() != size_) {
        throw evaluation_error("column '" + variables_[i] + "' has " +
                               std::to_string(columns_[i].size()) + " samples, expected " +
                               std::to_string(size_));
      }
    }
    if (size_ == 0) {
      throw evaluation_error("trace columns are empty");
    }
  }
}

std::vector<double> Trace::times() const {
  std::vector<double> out(size_);
  for (std::size_t k = 0; k < size_; ++k) {
    out[k] = time(k);
  }
  return out;
}

std::optional<std::size_t> Trace::find(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - variables_.begin());
}

std::span<const double> Trace::column(std::string_view name) const {
  auto index = find(name);
  if (!index) {
    throw evaluation_error("unknown variable '" + std::string(name) + "'");
  }
  return columns_[*index];
}

Trace Trace::suffix(std::size_t samples) const {
  if (samples >= size_) {
    throw evaluation_error("suffix would leave the trace empty");
  }
  std::vector<std::vector<double>> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) {
    cols.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(samples), c.end());
  }
  return Trace(variables_, step_, std::move(cols));
}

Trace Trace::merged(const Trace& other) const {
  if (other.size_ != size_ || other.step_ != step_) {
    throw evaluation_error("cannot merge traces on different time grids");
  }
  auto names = variables_;
  auto cols = columns_;
  for (std::size_t i = 0; i < other.variables_.size(); ++i) {
    names.push_back(other.variables_[i]);
    cols.push_back(other.columns_[i]);
  }
  return Trace(std::move(names), step_, std::move(cols));
}

} // namespace conjsynth
