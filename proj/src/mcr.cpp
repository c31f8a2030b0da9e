#include "conjsynth/mcr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace conjsynth::mcr {
namespace {

// Competition ranking where larger keys rank first: equal keys share the
// rank 1 + (number of strictly larger keys).
std::vector<std::size_t> competition_rank(const std::vector<double>& keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  std::vector<std::size_t> rank(keys.size());
  std::size_t group_start = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (pos > 0 && keys[order[pos]] != keys[order[pos - 1]]) {
      group_start = pos;
    }
    rank[order[pos]] = group_start + 1;
  }
  return rank;
}

void require_population(std::span<const EvaluatedIndividual> pop) {
  if (pop.empty()) {
    throw std::invalid_argument("MCR ranking needs a nonempty population");
  }
  const auto arity = pop.front().constraints.size();
  for (const auto& ind : pop) {
    if (ind.constraints.size() != arity) {
      throw std::invalid_argument("MCR population has ragged constraint vectors");
    }
    if (std::isnan(ind.objective) ||
        std::any_of(ind.constraints.begin(), ind.constraints.end(),
                    [](double v) { return std::isnan(v); })) {
      throw std::invalid_argument("MCR cannot rank NaN robustness");
    }
  }
}

} // namespace

bool is_feasible(const EvaluatedIndividual& ind) {
  return std::all_of(ind.constraints.begin(), ind.constraints.end(),
                     [](double v) { return v > 0.0; });
}

std::size_t violation_count(const EvaluatedIndividual& ind) {
  return static_cast<std::size_t>(std::count_if(ind.constraints.begin(), ind.constraints.end(),
                                                [](double v) { return !(v > 0.0); }));
}

std::vector<std::size_t> rank_objective(std::span<const EvaluatedIndividual> pop) {
  require_population(pop);
  std::vector<double> keys;
  keys.reserve(pop.size());
  for (const auto& ind : pop) {
    keys.push_back(ind.objective);
  }
  return competition_rank(keys);
}

std::vector<std::size_t> rank_constraint(std::span<const EvaluatedIndividual> pop,
                                         std::size_t j) {
  require_population(pop);
  if (j >= pop.front().constraints.size()) {
    throw std::invalid_argument("constraint index out of range");
  }
  std::vector<double> keys;
  keys.reserve(pop.size());
  for (const auto& ind : pop) {
    keys.push_back(std::min(0.0, ind.constraints[j]));
  }
  return competition_rank(keys);
}

std::vector<std::size_t> rank_violation_count(std::span<const EvaluatedIndividual> pop) {
  require_population(pop);
  std::vector<double> keys;
  keys.reserve(pop.size());
  for (const auto& ind : pop) {
    // Fewer violations rank first, so negate the count.
    keys.push_back(-static_cast<double>(violation_count(ind)));
  }
  return competition_rank(keys);
}

std::vector<McrScore> score(std::span<const EvaluatedIndividual> pop) {
  require_population(pop);
  const auto arity = pop.front().constraints.size();
  const bool any_feasible = std::any_of(pop.begin(), pop.end(), is_feasible);

  const auto r_obj = rank_objective(pop);
  const auto r_vnum = rank_violation_count(pop);
  std::vector<std::vector<std::size_t>> r_con;
  r_con.reserve(arity);
  for (std::size_t j = 0; j < arity; ++j) {
    r_con.push_back(rank_constraint(pop, j));
  }

  std::vector<McrScore> out(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    auto& s = out[i];
    s.r_obj = r_obj[i];
    s.r_vnum = r_vnum[i];
    s.objective_counted = any_feasible;
    s.total = s.r_vnum + (any_feasible ? s.r_obj : 0);
    s.r_con.reserve(arity);
    for (std::size_t j = 0; j < arity; ++j) {
      s.r_con.push_back(r_con[j][i]);
      s.total += r_con[j][i];
    }
  }
  return out;
}

std::vector<std::size_t> selection_order(std::span<const McrScore> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a].total < scores[b].total;
  });
  return order;
}

} // namespace conjsynth::mcr
