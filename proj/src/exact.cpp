#include "treewalk/exact.hpp"

#include <algorithm>
#include <limits>

#include "treewalk/errors.hpp"

namespace treewalk {

Rational StationaryProfile::prob(NodeAddr a) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), a);
  if (it == nodes.end() || *it != a) return 0;
  return probs[static_cast<std::size_t>(it - nodes.begin())];
}

StationaryProfile stationary_exact(const ExplicitTree& tree) {
  StationaryProfile p;
  p.level_budget = tree.level_budget();
  p.nodes = tree.nodes();
  const auto n = static_cast<unsigned long>(tree.level_budget());
  p.alpha_inverse = 0;
  for (const auto& a : p.nodes) p.alpha_inverse += pow2(n - static_cast<unsigned long>(a.depth()));
  p.probs.reserve(p.nodes.size());
  for (const auto& a : p.nodes) {
    Rational q(pow2(n - static_cast<unsigned long>(a.depth())), p.alpha_inverse);
    q.canonicalize();
    p.probs.push_back(std::move(q));
  }
  return p;
}

Rational ExplicitChain::at(std::size_t i, std::size_t j) const {
  for (const auto& [col, v] : rows[i]) {
    if (col == j) return v;
  }
  return 0;
}

std::optional<std::size_t> ExplicitChain::index_of(NodeAddr a) const {
  auto it = std::lower_bound(states.begin(), states.end(), a);
  if (it == states.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

ExplicitChain transition_matrix(const ExplicitTree& tree, bool lazy, std::size_t cap) {
  if (tree.size() > cap) {
    throw BudgetExceeded("tree with " + std::to_string(tree.size()) + " states exceeds matrix cap " +
                             std::to_string(cap),
                         tree.size());
  }
  ExplicitChain chain;
  chain.states = tree.nodes();
  chain.lazy = lazy;
  chain.rows.resize(tree.size());
  const Rational scale = lazy ? Rational(1, 2) : Rational(1);
  const Rational up = Rational(1, 2) * scale;
  const Rational down = Rational(1, 4) * scale;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    auto& row = chain.rows[i];
    row.emplace_back(i, 1);
    if (auto p = tree.parent_index(i)) {
      row.emplace_back(*p, up);
      row.front().second -= up;
    }
    for (int b = 0; b < 2; ++b) {
      if (auto c = tree.child_index(i, b)) {
        row.emplace_back(*c, down);
        row.front().second -= down;
      }
    }
  }
  return chain;
}

bool rows_sum_to_one(const ExplicitChain& chain) {
  for (const auto& row : chain.rows) {
    Rational s = 0;
    for (const auto& [col, v] : row) {
      if (v < 0) return false;
      s += v;
    }
    if (s != 1) return false;
  }
  return true;
}

namespace {

bool same_states(const ExplicitChain& chain, const StationaryProfile& profile) {
  return chain.states == profile.nodes && profile.probs.size() == profile.nodes.size();
}

}  // namespace

bool verify_stationary(const ExplicitChain& chain, const StationaryProfile& profile) {
  if (!same_states(chain, profile)) return false;
  std::vector<Rational> out(chain.size(), 0);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (const auto& [j, v] : chain.rows[i]) out[j] += profile.probs[i] * v;
  }
  return out == profile.probs;
}

bool verify_detailed_balance(const ExplicitChain& chain, const StationaryProfile& profile) {
  if (!same_states(chain, profile)) return false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (const auto& [j, v] : chain.rows[i]) {
      if (j == i) continue;
      if (profile.probs[i] * v != profile.probs[j] * chain.at(j, i)) return false;
    }
  }
  return true;
}

Distribution point_mass(const ExplicitChain& chain, NodeAddr at) {
  auto idx = chain.index_of(at);
  if (!idx) throw DomainError("start state '" + at.to_string() + "' is not a chain state");
  Distribution d(chain.size(), 0);
  d[*idx] = 1;
  return d;
}

Distribution advance(const ExplicitChain& chain, const Distribution& p) {
  Distribution out(chain.size(), 0);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (p[i] == 0) continue;
    for (const auto& [j, v] : chain.rows[i]) out[j] += p[i] * v;
  }
  return out;
}

Distribution distribution_at_time(const ExplicitChain& chain, NodeAddr start, std::uint64_t t) {
  Distribution d = point_mass(chain, start);
  for (std::uint64_t s = 0; s < t; ++s) d = advance(chain, d);
  return d;
}

Rational tv_distance(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw InvalidArgument("distributions over different supports");
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += abs(Rational(p[i] - q[i]));
  return s / 2;
}

namespace {

BigInt lcm_of_denominators(const std::vector<const Rational*>& values) {
  BigInt l = 1;
  for (const Rational* v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
  return l;
}

std::uint64_t mixing_time_reference(const ExplicitChain& chain, const StationaryProfile& profile, const Rational& eps,
                                    std::uint64_t max_steps) {
  Distribution d = point_mass(chain, NodeAddr::root());
  for (std::uint64_t t = 0; t <= max_steps; ++t) {
    if (tv_distance(d, profile.probs) <= eps) return t;
    d = advance(chain, d);
  }
  throw BudgetExceeded("mixing time exceeds " + std::to_string(max_steps) + " steps", max_steps);
}

// Distribution at time t is N / D^t with integer N, where D clears every
// matrix denominator; pi = c / Q likewise.
std::uint64_t mixing_time_scaled(const ExplicitChain& chain, const StationaryProfile& profile, const Rational& eps,
                                 std::uint64_t max_steps) {
  const std::size_t s = chain.size();
  std::vector<const Rational*> entries;
  for (const auto& row : chain.rows) {
    for (const auto& e : row) entries.push_back(&e.second);
  }
  const BigInt D = lcm_of_denominators(entries);

  // Incoming edges per state: (source, integer weight).
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> incoming(s);
  for (std::size_t i = 0; i < s; ++i) {
    for (const auto& [j, v] : chain.rows[i]) {
      if (v == 0) continue;
      incoming[j].emplace_back(i, BigInt(v.get_num() * (D / v.get_den())));
    }
  }

  std::vector<const Rational*> pis;
  for (const auto& p : profile.probs) pis.push_back(&p);
  const BigInt Q = lcm_of_denominators(pis);
  std::vector<BigInt> c(s);
  for (std::size_t i = 0; i < s; ++i) c[i] = profile.probs[i].get_num() * (Q / profile.probs[i].get_den());

  const auto root = chain.index_of(NodeAddr::root());
  if (!root) throw DomainError("chain has no root state");
  std::vector<BigInt> N(s, 0), next(s), diff(s);
  N[*root] = 1;
  BigInt S = 1;
  const auto n = static_cast<std::int64_t>(s);
  for (std::uint64_t t = 0; t <= max_steps; ++t) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      diff[k] = N[k] * Q - c[k] * S;
      mpz_abs(diff[k].get_mpz_t(), diff[k].get_mpz_t());
    }
    BigInt l1 = 0;
    for (const auto& d : diff) l1 += d;
    // TV = l1 / (2 S Q) <= eps_num / eps_den
    if (l1 * eps.get_den() <= 2 * eps.get_num() * S * Q) return t;
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n; ++j) {
      BigInt acc = 0;
      for (const auto& [i, w] : incoming[static_cast<std::size_t>(j)]) acc += N[i] * w;
      next[static_cast<std::size_t>(j)] = std::move(acc);
    }
    std::swap(N, next);
    S *= D;
  }
  throw BudgetExceeded("mixing time exceeds " + std::to_string(max_steps) + " steps", max_steps);
}

}  // namespace

std::uint64_t mixing_time_exact(const ExplicitChain& chain, const StationaryProfile& profile, const Rational& eps,
                                std::uint64_t max_steps, Exec exec) {
  if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
  if (!same_states(chain, profile)) throw InvalidArgument("profile and chain have different state sets");
  return exec == Exec::Serial ? mixing_time_reference(chain, profile, eps, max_steps)
                              : mixing_time_scaled(chain, profile, eps, max_steps);
}

namespace {

struct Cut {
  std::int64_t num = 0;  // cut weight
  std::int64_t den = 0;  // pi(Y); 0 means "no candidate yet"
};

bool less(const Cut& a, const Cut& b) {
  if (b.den == 0) return a.den != 0;
  if (a.den == 0) return false;
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

Rational conductance_reference(const ExplicitChain& chain, const StationaryProfile& profile) {
  const std::size_t s = chain.size();
  const Rational half(1, 2);
  bool found = false;
  Rational best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
    Rational piY = 0;
    for (std::size_t i = 0; i < s; ++i) {
      if (mask >> i & 1) piY += profile.probs[i];
    }
    if (piY > half) continue;
    Rational cut = 0;
    for (std::size_t i = 0; i < s; ++i) {
      if (!(mask >> i & 1)) continue;
      for (const auto& [j, v] : chain.rows[i]) {
        if (!(mask >> j & 1)) cut += profile.probs[i] * v;
      }
    }
    Rational ratio = cut / piY;
    if (!found || ratio < best) {
      best = ratio;
      found = true;
    }
  }
  if (!found) throw DegenerateInput("no subset with 0 < pi(Y) <= 1/2");
  return best;
}

struct Neighbor {
  std::uint32_t node;
  std::int64_t w_out;  // weight v -> node
  std::int64_t w_in;   // weight node -> v
};

// Gray-code enumeration of every subset, blocks of the high bits in
// parallel. Weights are integers in units of 1/L.
Rational conductance_fast(std::size_t s, const std::vector<std::int64_t>& pi,
                          const std::vector<std::vector<Neighbor>>& nbrs, std::int64_t total) {
  const int high = static_cast<int>(std::min<std::size_t>(s, 6));
  const int low = static_cast<int>(s) - high;
  const std::int64_t blocks = std::int64_t{1} << high;
  std::vector<Cut> best(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < blocks; ++b) {
    std::uint64_t mask = static_cast<std::uint64_t>(b) << low;
    std::int64_t piY = 0;
    std::int64_t cut = 0;
    for (std::size_t v = 0; v < s; ++v) {
      if (!(mask >> v & 1)) continue;
      piY += pi[v];
      for (const auto& nb : nbrs[v]) {
        if (!(mask >> nb.node & 1)) cut += nb.w_out;
      }
    }
    Cut local;
    const auto consider = [&] {
      if (piY > 0 && 2 * piY <= total) {
        const Cut c{cut, piY};
        if (less(c, local)) local = c;
      }
    };
    consider();
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << low); ++g) {
      const int v = __builtin_ctzll(g);
      const bool leaving = mask >> v & 1;
      std::int64_t delta = 0;
      for (const auto& nb : nbrs[static_cast<std::size_t>(v)]) {
        if (mask >> nb.node & 1) {
          delta += nb.w_in;
        } else {
          delta -= nb.w_out;
        }
      }
      if (leaving) {
        cut += delta;
        piY -= pi[static_cast<std::size_t>(v)];
      } else {
        cut -= delta;
        piY += pi[static_cast<std::size_t>(v)];
      }
      mask ^= std::uint64_t{1} << v;
      consider();
    }
    best[static_cast<std::size_t>(b)] = local;
  }

  Cut overall;
  for (const auto& c : best) {
    if (less(c, overall)) overall = c;
  }
  if (overall.den == 0) throw DegenerateInput("no subset with 0 < pi(Y) <= 1/2");
  Rational r(BigInt(static_cast<long>(overall.num)), BigInt(static_cast<long>(overall.den)));
  r.canonicalize();
  return r;
}

}  // namespace

Rational conductance_exact(const ExplicitChain& chain, const StationaryProfile& profile, std::size_t cap, Exec exec) {
  const std::size_t s = chain.size();
  if (s < 2) throw DegenerateInput("conductance needs at least two states");
  if (s > cap || s > 62) {
    throw BudgetExceeded("chain with " + std::to_string(s) + " states exceeds conductance cap " + std::to_string(cap),
                         s);
  }
  if (!same_states(chain, profile)) throw InvalidArgument("profile and chain have different state sets");
  if (exec == Exec::Serial) return conductance_reference(chain, profile);

  std::vector<Rational> w;  // off-diagonal edge weights, row-major
  std::vector<const Rational*> all;
  for (std::size_t i = 0; i < s; ++i) {
    for (const auto& [j, v] : chain.rows[i]) {
      if (j != i && v != 0) w.push_back(profile.probs[i] * v);
    }
  }
  for (const auto& p : profile.probs) all.push_back(&p);
  for (const auto& x : w) all.push_back(&x);
  const BigInt L = lcm_of_denominators(all);
  if (L >= BigInt(std::numeric_limits<std::int64_t>::max() / 4)) return conductance_reference(chain, profile);

  const auto scaled = [&](const Rational& q) { return BigInt(q.get_num() * (L / q.get_den())).get_si(); };
  std::vector<std::int64_t> pi(s);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < s; ++i) {
    pi[i] = scaled(profile.probs[i]);
    total += pi[i];
  }
  std::vector<std::vector<Neighbor>> nbrs(s);
  const auto link = [&](std::size_t a, std::size_t b) -> Neighbor& {
    for (auto& nb : nbrs[a]) {
      if (nb.node == b) return nb;
    }
    nbrs[a].push_back({static_cast<std::uint32_t>(b), 0, 0});
    return nbrs[a].back();
  };
  std::size_t k = 0;
  for (std::size_t i = 0; i < s; ++i) {
    for (const auto& [j, v] : chain.rows[i]) {
      if (j == i || v == 0) continue;
      const std::int64_t wij = scaled(w[k++]);
      link(i, j).w_out += wij;
      link(j, i).w_in += wij;
    }
  }
  return conductance_fast(s, pi, nbrs, total);
}

BigInt size_from_alpha_inverses(const std::vector<BigInt>& alpha_inverses) {
  if (alpha_inverses.empty() || alpha_inverses.front() != 1) {
    throw InvalidProfile("alpha-inverse sequence must start with A_0 = 1");
  }
  BigInt size = alpha_inverses.back();
  for (std::size_t k = 0; k + 1 < alpha_inverses.size(); ++k) size -= alpha_inverses[k];
  return size;
}

LevelProfile level_counts_from_alphas(const std::vector<BigInt>& alpha_inverses) {
  if (alpha_inverses.empty() || alpha_inverses.front() != 1) {
    throw InvalidProfile("alpha-inverse sequence must start with A_0 = 1");
  }
  LevelProfile lp;
  lp.counts.push_back(1);
  for (std::size_t k = 1; k < alpha_inverses.size(); ++k) {
    BigInt r = alpha_inverses[k] - 2 * alpha_inverses[k - 1];
    if (r < 0) throw InconsistentProfile("negative level count at depth " + std::to_string(k));
    lp.counts.push_back(std::move(r));
  }
  return lp;
}

std::vector<BigInt> pruned_alpha_inverses(const SuccinctTree& tree, std::uint64_t cap) {
  std::vector<BigInt> out;
  for (int k = 0; k <= tree.level_budget(); ++k) {
    out.push_back(stationary_exact(enumerate(tree.prune(k), cap)).alpha_inverse);
  }
  return out;
}

}  // namespace treewalk
