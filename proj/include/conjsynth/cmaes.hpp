#pragma once

#include "conjsynth/signals.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

namespace conjsynth::cmaes {

/// Ordered list of lambda decision vectors.
using Population = std::vector<DecisionVector>;

enum class Weighting {
  Logarithmic, ///< w_i proportional to ln((lambda+1)/2) - ln(i)
  Uniform,     ///< w_i = 1/mu, the plain mean of the selected individuals
};

struct Options {
  std::optional<std::size_t> lambda;
  Weighting weighting = Weighting::Logarithmic;
  /// Initial step size as a fraction of the mean box width.
  double sigma_fraction = 0.3;
  /// Absolute initial step size; overrides sigma_fraction when set.
  std::optional<double> initial_sigma;
};

/// Strategy constants derived once from (n, lambda). Defaults follow Hansen's
/// CMA-ES tutorial.
struct Parameters {
  std::size_t dimension = 0;
  std::size_t lambda = 0;
  std::size_t mu = 0;
  std::vector<double> weights;
  double mu_eff = 0.0;
  double c_sigma = 0.0;
  double d_sigma = 0.0;
  double c_c = 0.0;
  double c_1 = 0.0;
  double c_mu = 0.0;
  double chi_n = 0.0; ///< E||N(0, I)||

  static Parameters make(std::size_t dimension, const Options& options);
};

/// 4 + floor(3 ln n).
std::size_t default_lambda(std::size_t dimension);

/// 10 + ceil(30 n / lambda).
std::size_t equal_fun_values_window(std::size_t dimension, std::size_t lambda);

struct State {
  Eigen::VectorXd mean;
  double sigma = 0.0;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd eigenbasis;  ///< B, columns are eigenvectors of C
  Eigen::VectorXd axis_scales; ///< D, square roots of the eigenvalues of C
  Eigen::VectorXd path_sigma;
  Eigen::VectorXd path_c;
  std::size_t generation = 0;
  std::mt19937_64 rng;
  std::normal_distribution<double> normal;
  /// Most recent best scores, oldest first, at most one window long.
  std::deque<double> best_history;

  friend bool operator==(const State& a, const State& b);
};

/// (mu/mu_w, lambda)-CMA-ES with the ask/tell interface and box bounds
/// enforced by clipping each sample.
///
/// The object is single-owner: ask() and tell() must alternate on one thread.
/// Evaluating the asked population in between may happen concurrently.
class Optimizer {
public:
  /// Mean starts at the box center, C = I. Throws config_error when the
  /// bounds are empty, mismatched, or not strictly ordered.
  Optimizer(std::vector<double> lower, std::vector<double> upper, std::uint64_t seed,
            const Options& options = {});

  /// Sample lambda points from N(mean, sigma^2 C), clipped into the box.
  Population ask();

  /// Update the distribution from `ranked`, the last asked population sorted
  /// best first. Only the order matters to the update. `best_score` is the
  /// best objective value within this generation, kept for EqualFunValues.
  /// Throws std::invalid_argument when the population size is not lambda and
  /// numerical_error if the covariance loses positive definiteness.
  void tell(const Population& ranked, double best_score);

  /// True once the last equal_fun_values_window() recorded best scores are
  /// all equal.
  bool equal_fun_values_triggered() const;
  std::size_t stationarity_window() const;

  std::size_t dimension() const noexcept { return params_.dimension; }
  std::size_t lambda() const noexcept { return params_.lambda; }
  const Parameters& parameters() const noexcept { return params_; }
  const State& state() const noexcept { return state_; }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }

private:
  void decompose();

  std::vector<double> lower_;
  std::vector<double> upper_;
  Parameters params_;
  State state_;
};

} // namespace conjsynth::cmaes
