#include "treewalk/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "treewalk/chain.hpp"
#include "treewalk/errors.hpp"
#include "treewalk/exact.hpp"

namespace treewalk {

namespace {

void check_unit(double v, const char* name, bool allow_one) {
  const bool ok = v > 0 && (allow_one ? v <= 1 : v < 1);
  if (!ok) throw InvalidArgument(std::string(name) + (allow_one ? " must lie in (0, 1]" : " must lie in (0, 1)"));
}

std::uint64_t exact_burn_in(const ExplicitTree& explicit_tree, double tv_epsilon) {
  const ExplicitChain chain = transition_matrix(explicit_tree, true, explicit_tree.size());
  return mixing_time_exact(chain, stationary_exact(explicit_tree), Rational(tv_epsilon));
}

}  // namespace

std::uint64_t median_batch_count(double delta) {
  check_unit(delta, "delta", false);
  return 2 * static_cast<std::uint64_t>(std::ceil(4.0 * std::log(1.0 / delta))) + 1;
}

std::uint64_t samples_per_batch(int n, double zeta, double c_m) {
  check_unit(zeta, "zeta", true);
  if (!(c_m > 0)) throw InvalidArgument("sample constant must be positive");
  return static_cast<std::uint64_t>(std::ceil(c_m * (n + 1) / (zeta * zeta)));
}

std::uint64_t resolve_burn_in(const SuccinctTree& tree, double tv_epsilon, const EstimatorOptions& opts) {
  if (opts.burn_in == BurnInMode::Bound) return burn_in_steps(tree.level_budget(), tv_epsilon, opts.burn_in_constant);
  if (!(tv_epsilon > 0 && tv_epsilon < 1)) throw InvalidArgument("tv_epsilon must lie in (0, 1)");
  return exact_burn_in(enumerate(tree, opts.exact_state_cap), tv_epsilon);
}

double median_of_batches(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty list");
  if (values.size() % 2 == 0) throw InvalidArgument("median needs an odd number of batches");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

namespace {

template <class Topology>
AlphaEstimate run_batches(const Topology& topo, int n, AlphaEstimate est, const RandomStream& rng, Exec exec) {
  est.batch_values.reserve(est.batches);
  for (std::uint64_t b = 0; b < est.batches; ++b) {
    const std::uint64_t hits = count_root_hits(topo, est.samples_per_batch, est.burn_in, rng.substream(b), true, exec);
    const double p_hat = static_cast<double>(hits) / static_cast<double>(est.samples_per_batch);
    est.batch_values.push_back(std::ldexp(p_hat, -n));
  }
  est.value = median_of_batches(est.batch_values);
  est.chain_steps_total = est.batches * est.samples_per_batch * est.burn_in;
  return est;
}

}  // namespace

AlphaEstimate estimate_alpha(const SuccinctTree& tree, double zeta, double delta, const RandomStream& rng,
                             const EstimatorOptions& opts) {
  check_unit(zeta, "zeta", true);
  check_unit(delta, "delta", false);
  const int n = tree.level_budget();
  AlphaEstimate est;
  est.zeta = zeta;
  est.delta = delta;
  est.batches = median_batch_count(delta);
  est.samples_per_batch = samples_per_batch(n, zeta, opts.sample_constant);
  const double tv_epsilon = zeta / (2.0 * (n + 1));

  if (opts.burn_in == BurnInMode::ExactMeasured) {
    const ExplicitTree explicit_tree = enumerate(tree, opts.exact_state_cap);
    est.burn_in = exact_burn_in(explicit_tree, tv_epsilon);
    return run_batches(CompiledTopology(explicit_tree), n, std::move(est), rng, opts.exec);
  }
  est.burn_in = burn_in_steps(n, tv_epsilon, opts.burn_in_constant);
  return run_batches(SuccinctTopology(tree), n, std::move(est), rng, opts.exec);
}

SizeEstimate estimate_size_additive(const SuccinctTree& tree, double xi, double delta, const RandomStream& rng,
                                    const EstimatorOptions& opts) {
  check_unit(xi, "xi", true);
  check_unit(delta, "delta", false);
  const int n = tree.level_budget();
  const double zeta = xi / (2.0 * (n + 1));
  const double eps = zeta / (1.0 + zeta);
  const double level_delta = delta / (n + 1);

  SizeEstimate est;
  est.method = "level-chain";
  est.xi = xi;
  est.delta = delta;
  for (int k = 0; k <= n; ++k) {
    est.per_level_alphas.push_back(estimate_alpha(tree.prune(k), eps, level_delta, rng.substream(static_cast<std::uint64_t>(k)), opts));
    const auto& a = est.per_level_alphas.back();
    est.chain_steps_total += a.chain_steps_total;
    est.samples += a.batches * a.samples_per_batch;
  }
  est.A_hat = 1.0 / est.per_level_alphas.back().value;
  for (int k = 0; k < n; ++k) est.B_hat += 1.0 / est.per_level_alphas[static_cast<std::size_t>(k)].value;
  est.value = est.A_hat - est.B_hat;
  return est;
}

ProbabilityEstimate estimate_probability(const SuccinctTree& tree, double xi, double delta, const RandomStream& rng,
                                         const EstimatorOptions& opts) {
  ProbabilityEstimate p;
  p.size = estimate_size_additive(tree, xi, delta, rng, opts);
  p.xi = xi;
  p.delta = delta;
  p.value = std::clamp(std::ldexp(p.size.value, -tree.level_budget()), 0.0, 2.0);
  return p;
}

SizeEstimate estimate_size_uniform(const SuccinctTree& tree, double xi, double delta, const RandomStream& rng,
                                   Exec exec) {
  check_unit(xi, "xi", true);
  check_unit(delta, "delta", false);
  const int n = tree.level_budget();
  const std::uint64_t perfect = (std::uint64_t{2} << n) - 1;
  const double xi_rescaled = xi * std::ldexp(1.0, n) / static_cast<double>(perfect);
  const auto m = static_cast<std::uint64_t>(std::ceil(2.0 * std::log(2.0 / delta) / (xi_rescaled * xi_rescaled)));

  const auto sample = [&](std::int64_t j) -> std::uint64_t {
    RandomStream s = rng.substream(static_cast<std::uint64_t>(j));
    return tree.contains(NodeAddr::from_heap_index(1 + s.below(perfect))) ? 1 : 0;
  };
  std::uint64_t hits = 0;
  const auto count = static_cast<std::int64_t>(m);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) reduction(+ : hits)
    for (std::int64_t j = 0; j < count; ++j) hits += sample(j);
  } else {
    for (std::int64_t j = 0; j < count; ++j) hits += sample(j);
  }

  SizeEstimate est;
  est.method = "uniform";
  est.xi = xi;
  est.delta = delta;
  est.samples = m;
  est.value = static_cast<double>(hits) / static_cast<double>(m) * static_cast<double>(perfect);
  est.A_hat = est.value;
  return est;
}

double knuth_estimate(const SuccinctTree& tree, RandomStream& rng) {
  NodeAddr at = NodeAddr::root();
  double total = 1;
  double weight = 1;
  for (;;) {
    NodeAddr kids[2];
    int d = 0;
    for (int b = 0; b < 2; ++b) {
      if (tree.contains_child(at, b)) kids[d++] = at.child(b);
    }
    if (d == 0) return total;
    weight *= d;
    total += weight;
    at = kids[d == 1 ? 0 : rng.below(2)];
  }
}

KnuthSummary knuth_summary(const SuccinctTree& tree, std::uint64_t runs, const RandomStream& rng) {
  if (runs < 1) throw InvalidArgument("runs must be >= 1");
  KnuthSummary out;
  out.runs = runs;
  double mean = 0;
  double m2 = 0;
  for (std::uint64_t j = 0; j < runs; ++j) {
    RandomStream s = rng.substream(j);
    const double x = knuth_estimate(tree, s);
    if (j == 0) {
      out.min = out.max = x;
    } else {
      out.min = std::min(out.min, x);
      out.max = std::max(out.max, x);
    }
    const double d = x - mean;
    mean += d / static_cast<double>(j + 1);
    m2 += d * (x - mean);
  }
  out.mean = mean;
  out.std_error = runs > 1 ? std::sqrt(m2 / static_cast<double>(runs - 1) / static_cast<double>(runs)) : 0.0;
  return out;
}

}  // namespace treewalk
