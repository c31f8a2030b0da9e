#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conjsynth {

/// A finite, uniformly sampled multi-variable signal. Sample k sits at time
/// k * step(). Immutable after construction.
class Trace {
public:
  Trace() = default;

  /// Throws evaluation_error unless step > 0, names are unique and every
  /// column has the same nonzero length.
  Trace(std::vector<std::string> variables, double step,
        std::vector<std::vector<double>> columns);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  double step() const noexcept { return step_; }
  double time(std::size_t sample) const noexcept { return static_cast<double>(sample) * step_; }
  double horizon() const noexcept { return size_ == 0 ? 0.0 : time(size_ - 1); }
  std::vector<double> times() const;

  std::optional<std::size_t> find(std::string_view name) const;
  std::span<const double> column(std::size_t index) const { return columns_.at(index); }
  /// Throws evaluation_error for unknown names.
  std::span<const double> column(std::string_view name) const;

  /// The trace with the first `samples` samples dropped and time re-based to 0.
  Trace suffix(std::size_t samples) const;

  /// Columns of both traces side by side. Grids must match and names must be
  /// disjoint.
  Trace merged(const Trace& other) const;

  friend bool operator==(const Trace&, const Trace&) = default;

private:
  std::vector<std::string> variables_;
  double step_ = 0.0;
  std::size_t size_ = 0;
  std::vector<std::vector<double>> columns_;
};

} // namespace conjsynth
