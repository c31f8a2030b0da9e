#include "conjsynth/cmaes.hpp"

#include "conjsynth/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace conjsynth::cmaes {

std::size_t default_lambda(std::size_t dimension) {
  return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(dimension))));
}

std::size_t equal_fun_values_window(std::size_t dimension, std::size_t lambda) {
  return 10 + (30 * dimension + lambda - 1) / lambda;
}

Parameters Parameters::make(std::size_t dimension, const Options& options) {
  if (dimension == 0) {
    throw config_error("CMA-ES needs at least one dimension");
  }
  Parameters p;
  p.dimension = dimension;
  p.lambda = options.lambda.value_or(default_lambda(dimension));
  if (p.lambda < 2) {
    throw config_error("CMA-ES population size must be at least 2");
  }
  p.mu = p.lambda / 2;

  p.weights.resize(p.mu);
  for (std::size_t i = 0; i < p.mu; ++i) {
    p.weights[i] = options.weighting == Weighting::Uniform
                       ? 1.0
                       : std::log((static_cast<double>(p.lambda) + 1.0) / 2.0) -
                             std::log(static_cast<double>(i) + 1.0);
  }
  const double sum = std::accumulate(p.weights.begin(), p.weights.end(), 0.0);
  double sum_sq = 0.0;
  for (auto& w : p.weights) {
    w /= sum;
    sum_sq += w * w;
  }
  p.mu_eff = 1.0 / sum_sq;

  const double n = static_cast<double>(dimension);
  const double me = p.mu_eff;
  p.c_sigma = (me + 2.0) / (n + me + 5.0);
  p.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((me - 1.0) / (n + 1.0)) - 1.0) + p.c_sigma;
  p.c_c = (4.0 + me / n) / (n + 4.0 + 2.0 * me / n);
  p.c_1 = 2.0 / ((n + 1.3) * (n + 1.3) + me);
  p.c_mu = std::min(1.0 - p.c_1, 2.0 * (me - 2.0 + 1.0 / me) / ((n + 2.0) * (n + 2.0) + me));
  p.chi_n = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));
  return p;
}

bool operator==(const State& a, const State& b) {
  auto same = [](const auto& x, const auto& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && (x.array() == y.array()).all();
  };
  return same(a.mean, b.mean) && a.sigma == b.sigma && same(a.covariance, b.covariance) &&
         same(a.eigenbasis, b.eigenbasis) && same(a.axis_scales, b.axis_scales) &&
         same(a.path_sigma, b.path_sigma) && same(a.path_c, b.path_c) &&
         a.generation == b.generation && a.rng == b.rng && a.normal == b.normal &&
         a.best_history == b.best_history;
}

Optimizer::Optimizer(std::vector<double> lower, std::vector<double> upper, std::uint64_t seed,
                     const Options& options)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw config_error("CMA-ES bounds must be nonempty and of equal length");
  }
  double width_sum = 0.0;
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i]) || !std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      throw config_error("CMA-ES bound " + std::to_string(i) + " is not a finite lo < hi pair");
    }
    width_sum += upper_[i] - lower_[i];
  }
  params_ = Parameters::make(lower_.size(), options);

  const auto n = static_cast<Eigen::Index>(lower_.size());
  state_.mean.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    state_.mean[i] = 0.5 * (lower_[i] + upper_[i]);
  }
  state_.sigma = options.initial_sigma.value_or(options.sigma_fraction * width_sum /
                                                static_cast<double>(lower_.size()));
  if (!(state_.sigma > 0.0) || !std::isfinite(state_.sigma)) {
    throw config_error("initial step size must be positive");
  }
  state_.covariance = Eigen::MatrixXd::Identity(n, n);
  state_.eigenbasis = Eigen::MatrixXd::Identity(n, n);
  state_.axis_scales = Eigen::VectorXd::Ones(n);
  state_.path_sigma = Eigen::VectorXd::Zero(n);
  state_.path_c = Eigen::VectorXd::Zero(n);
  state_.rng.seed(seed);
}

Population Optimizer::ask() {
  const auto n = static_cast<Eigen::Index>(params_.dimension);
  Population pop;
  pop.reserve(params_.lambda);
  Eigen::VectorXd z(n);
  for (std::size_t k = 0; k < params_.lambda; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      z[i] = state_.normal(state_.rng);
    }
    const Eigen::VectorXd x =
        state_.mean + state_.sigma * (state_.eigenbasis * state_.axis_scales.cwiseProduct(z));
    DecisionVector v(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      v[u] = std::clamp(x[i], lower_[u], upper_[u]);
    }
    pop.push_back(std::move(v));
  }
  return pop;
}

void Optimizer::tell(const Population& ranked, double best_score) {
  if (ranked.size() != params_.lambda) {
    throw std::invalid_argument("tell() expects " + std::to_string(params_.lambda) +
                                " individuals, got " + std::to_string(ranked.size()));
  }
  const auto n = static_cast<Eigen::Index>(params_.dimension);
  for (const auto& x : ranked) {
    if (x.size() != params_.dimension) {
      throw std::invalid_argument("tell() got an individual of the wrong dimension");
    }
  }
  const auto& p = params_;
  auto& s = state_;

  const Eigen::VectorXd old_mean = s.mean;
  Eigen::MatrixXd steps(n, static_cast<Eigen::Index>(p.mu));
  Eigen::VectorXd new_mean = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < p.mu; ++i) {
    const Eigen::Map<const Eigen::VectorXd> x(ranked[i].data(), n);
    new_mean += p.weights[i] * x;
    steps.col(static_cast<Eigen::Index>(i)) = (x - old_mean) / s.sigma;
  }
  const Eigen::VectorXd y_w = (new_mean - old_mean) / s.sigma;

  // C^{-1/2} y_w = B D^{-1} B^T y_w
  const Eigen::VectorXd whitened =
      s.eigenbasis * (s.eigenbasis.transpose() * y_w).cwiseQuotient(s.axis_scales);
  s.path_sigma = (1.0 - p.c_sigma) * s.path_sigma +
                 std::sqrt(p.c_sigma * (2.0 - p.c_sigma) * p.mu_eff) * whitened;

  const double ps_norm = s.path_sigma.norm();
  const double decay = std::pow(1.0 - p.c_sigma, 2.0 * static_cast<double>(s.generation + 1));
  const bool h_sigma = ps_norm / std::sqrt(1.0 - decay) / p.chi_n <
                       1.4 + 2.0 / (static_cast<double>(p.dimension) + 1.0);

  s.path_c = (1.0 - p.c_c) * s.path_c +
             (h_sigma ? std::sqrt(p.c_c * (2.0 - p.c_c) * p.mu_eff) : 0.0) * y_w;

  Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < p.mu; ++i) {
    const auto col = steps.col(static_cast<Eigen::Index>(i));
    rank_mu.noalias() += p.weights[i] * col * col.transpose();
  }
  const double hsig_correction = h_sigma ? 0.0 : p.c_c * (2.0 - p.c_c);
  s.covariance = (1.0 - p.c_1 - p.c_mu) * s.covariance +
                 p.c_1 * (s.path_c * s.path_c.transpose() + hsig_correction * s.covariance) +
                 p.c_mu * rank_mu;
  s.covariance = 0.5 * (s.covariance + s.covariance.transpose()).eval();

  s.sigma *= std::exp((p.c_sigma / p.d_sigma) * (ps_norm / p.chi_n - 1.0));
  if (!std::isfinite(s.sigma) || !(s.sigma > 0.0)) {
    throw numerical_error("CMA-ES step size degenerated to " + std::to_string(s.sigma));
  }
  s.mean = new_mean;
  ++s.generation;

  s.best_history.push_back(best_score);
  while (s.best_history.size() > stationarity_window()) {
    s.best_history.pop_front();
  }
  decompose();
}

void Optimizer::decompose() {
  auto& s = state_;
  if (!s.covariance.allFinite()) {
    throw numerical_error("CMA-ES covariance has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.covariance);
  if (eig.info() != Eigen::Success) {
    throw numerical_error("CMA-ES covariance eigendecomposition failed");
  }
  const Eigen::VectorXd values = eig.eigenvalues();
  if (!(values.minCoeff() > 0.0)) {
    throw numerical_error("CMA-ES covariance is no longer positive definite");
  }
  s.eigenbasis = eig.eigenvectors();
  s.axis_scales = values.cwiseSqrt();
}

std::size_t Optimizer::stationarity_window() const {
  return equal_fun_values_window(params_.dimension, params_.lambda);
}

bool Optimizer::equal_fun_values_triggered() const {
  const auto& h = state_.best_history;
  if (h.size() < stationarity_window()) {
    return false;
  }
  const auto [lo, hi] = std::minmax_element(h.begin(), h.end());
  return *lo == *hi;
}

} // namespace conjsynth::cmaes
