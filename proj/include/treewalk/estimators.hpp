#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treewalk/exec.hpp"
#include "treewalk/random.hpp"
#include "treewalk/tree.hpp"

namespace treewalk {

enum class BurnInMode {
  Bound,          // burn_in_steps() from the conductance bound
  ExactMeasured,  // exact TV mixing time of the enumerated instance
};

struct EstimatorOptions {
  BurnInMode burn_in = BurnInMode::Bound;
  double burn_in_constant = 2.0;
  double sample_constant = 4.0;  // c_m in m = ceil(c_m (n+1) / zeta^2)
  std::uint64_t exact_state_cap = 4096;
  Exec exec = Exec::Parallel;
};

struct AlphaEstimate {
  double value = 0;
  double zeta = 0;
  double delta = 0;
  std::uint64_t batches = 0;
  std::uint64_t samples_per_batch = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t chain_steps_total = 0;
  std::vector<double> batch_values;
};

struct SizeEstimate {
  std::string method;
  double value = 0;
  double xi = 0;
  double delta = 0;
  std::vector<AlphaEstimate> per_level_alphas;
  double A_hat = 0;
  double B_hat = 0;
  std::uint64_t samples = 0;
  std::uint64_t chain_steps_total = 0;
};

struct ProbabilityEstimate {
  double value = 0;
  double xi = 0;
  double delta = 0;
  SizeEstimate size;
};

/// t = 2 ceil(4 ln(1/delta)) + 1.
std::uint64_t median_batch_count(double delta);
/// m = ceil(c_m (n+1) / zeta^2).
std::uint64_t samples_per_batch(int n, double zeta, double c_m);

/// Burn-in for sampling `tree` to within tv_epsilon of stationarity.
std::uint64_t resolve_burn_in(const SuccinctTree& tree, double tv_epsilon, const EstimatorOptions& opts);

/// Middle order statistic; throws InvalidArgument on empty or even input.
double median_of_batches(std::vector<double> values);

/// Median over batches of 2^-n * (fraction of stationary samples at the root).
AlphaEstimate estimate_alpha(const SuccinctTree& tree, double zeta, double delta, const RandomStream& rng,
                             const EstimatorOptions& opts = {});

/// Additive +-xi 2^n estimate of |S| from per-level alpha estimates of the
/// pruned family.
SizeEstimate estimate_size_additive(const SuccinctTree& tree, double xi, double delta, const RandomStream& rng,
                                    const EstimatorOptions& opts = {});

/// estimate_size_additive / 2^n, clamped to [0, 2].
ProbabilityEstimate estimate_probability(const SuccinctTree& tree, double xi, double delta,
                                         const RandomStream& rng, const EstimatorOptions& opts = {});

/// Uniform sampling over the perfect tree via heap indices.
SizeEstimate estimate_size_uniform(const SuccinctTree& tree, double xi, double delta, const RandomStream& rng,
                                   Exec exec = Exec::Parallel);

/// One random root-to-dead-end descent: 1 + d0 (1 + d1 (1 + ...)).
double knuth_estimate(const SuccinctTree& tree, RandomStream& rng);

struct KnuthSummary {
  std::uint64_t runs = 0;
  double mean = 0;
  double std_error = 0;
  double min = 0;
  double max = 0;
};

/// `runs` descents, descent j on rng.substream(j).
KnuthSummary knuth_summary(const SuccinctTree& tree, std::uint64_t runs, const RandomStream& rng);

}  // namespace treewalk
