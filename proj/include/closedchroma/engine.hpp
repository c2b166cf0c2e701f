#pragma once

// Ground-truth machinery for closed colorings with remainder k mod n:
// labeling verification, existence via the mod-n linear system, exact
// chromatic numbers, the residue-lift minimization behind the closed
// chromatic number, and independent efficient dominating sets.

#include "closedchroma/graph.hpp"
#include "closedchroma/zmod.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace closedchroma {

inline std::int64_t mod_residue(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

/// Integer labeling of the vertices; the order is the size of its image.
struct Labeling {
  std::vector<long long> values;

  std::size_t order() const {
    std::set<long long> image(values.begin(), values.end());
    return image.size();
  }
};

struct VerifyReport {
  bool proper = false;
  bool closed_ok = false;
  std::size_t order = 0;
  std::optional<std::string> first_violation;
};

/// Checks properness and the closed-neighborhood sum condition
/// sum_{w in N[v]} l(w) = k (mod n) at every vertex.
inline VerifyReport verify_labeling(const Graph& g, const Labeling& labeling,
                                    std::int64_t n, std::int64_t k) {
  if (n < 1) throw std::invalid_argument("verify_labeling: modulus must be >= 1");
  if (labeling.values.size() != g.vertex_count())
    throw std::invalid_argument("verify_labeling: labeling length mismatch");
  k = mod_residue(k, n);
  VerifyReport report;
  report.proper = true;
  report.closed_ok = true;
  report.order = labeling.order();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (int w : g.neighbors(static_cast<int>(v))) {
      if (static_cast<std::size_t>(w) < v) continue;
      if (labeling.values[v] == labeling.values[w]) {
        report.proper = false;
        if (!report.first_violation)
          report.first_violation = "edge (" + std::to_string(v) + "," +
                                   std::to_string(w) + "): equal labels " +
                                   std::to_string(labeling.values[v]);
      }
    }
    std::int64_t sum = mod_residue(labeling.values[v], n);
    for (int w : g.neighbors(static_cast<int>(v)))
      sum = (sum + mod_residue(labeling.values[w], n)) % n;
    if (sum != k) {
      report.closed_ok = false;
      if (!report.first_violation)
        report.first_violation = "vertex " + std::to_string(v) + ": closed sum = " +
                                 std::to_string(sum) + " (mod " + std::to_string(n) +
                                 "), expected " + std::to_string(k);
    }
  }
  return report;
}

/// Matrix A+I of the closed-neighborhood system: entry (v,u) is 1 iff u is in N[v].
inline IntMatrix closed_matrix(const Graph& g) {
  const std::size_t v_count = g.vertex_count();
  IntMatrix m(v_count, v_count);
  for (std::size_t v = 0; v < v_count; ++v) {
    m.at(v, v) = 1;
    for (int w : g.neighbors(static_cast<int>(v))) m.at(v, w) = 1;
  }
  return m;
}

/// Existence / value / unknown verdict for a closed chromatic query. The
/// value is absent on verdicts that only establish existence (some theorem
/// classifiers). The source names the deciding theorem or "oracle".
struct Verdict {
  enum class Kind { Exists, NotExists, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<std::size_t> value;
  std::optional<Labeling> witness;
  std::string source;

  static Verdict exists(std::size_t value, std::optional<Labeling> witness,
                        std::string source) {
    return {Kind::Exists, value, std::move(witness), std::move(source)};
  }
  static Verdict exists_only(std::string source) {
    return {Kind::Exists, std::nullopt, std::nullopt, std::move(source)};
  }
  static Verdict not_exists(std::string source) {
    return {Kind::NotExists, std::nullopt, std::nullopt, std::move(source)};
  }
  static Verdict unknown(std::string source) {
    return {Kind::Unknown, std::nullopt, std::nullopt, std::move(source)};
  }

  bool is_exists() const { return kind == Kind::Exists; }
  bool is_not_exists() const { return kind == Kind::NotExists; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

struct ExistenceResult {
  bool exists = false;
  std::optional<SolutionSpace> space;
};

/// A proper closed coloring exists iff any closed coloring does, i.e. iff the
/// mod-n system (A+I)x = k*1 is solvable; properness never obstructs.
inline ExistenceResult exists_closed_coloring(const Graph& g, std::int64_t n,
                                              std::int64_t k) {
  if (n < 1) throw std::invalid_argument("exists_closed_coloring: modulus must be >= 1");
  std::vector<BigInt> b(g.vertex_count(), BigInt(mod_residue(k, n)));
  if (g.vertex_count() == 0) return {true, std::nullopt};
  auto space = solve_mod_linear(closed_matrix(g), b, n);
  return {space.has_value(), std::move(space)};
}

struct ChromaticResult {
  int value = 0;
  std::vector<int> coloring;  // colors 0..value-1
};

namespace detail {

// Smallest-last (degeneracy) order; ties broken by lowest vertex index.
inline std::vector<int> degeneracy_order(const Graph& g) {
  const int v_count = static_cast<int>(g.vertex_count());
  std::vector<int> deg(v_count), removal;
  std::vector<bool> removed(v_count, false);
  for (int v = 0; v < v_count; ++v) deg[v] = g.degree(v);
  for (int step = 0; step < v_count; ++step) {
    int pick = -1;
    for (int v = 0; v < v_count; ++v)
      if (!removed[v] && (pick == -1 || deg[v] < deg[pick])) pick = v;
    removed[pick] = true;
    removal.push_back(pick);
    for (int w : g.neighbors(pick))
      if (!removed[w]) --deg[w];
  }
  std::reverse(removal.begin(), removal.end());
  return removal;
}

}  // namespace detail

/// Exact chromatic number by branch and bound over the degeneracy order,
/// with a greedy upper bound and a greedy clique lower bound. Returns an
/// optimal coloring; deterministic for a fixed input.
inline ChromaticResult exact_chromatic_number(const Graph& g,
                                              std::size_t vertex_bound = 64) {
  const int v_count = static_cast<int>(g.vertex_count());
  if (g.vertex_count() > vertex_bound)
    throw resource_error("exact_chromatic_number: vertex count " +
                         std::to_string(v_count) + " exceeds bound " +
                         std::to_string(vertex_bound));
  if (v_count == 0) return {0, {}};
  const std::vector<int> order = detail::degeneracy_order(g);

  // Greedy upper bound along the order.
  std::vector<int> greedy(v_count, -1);
  int upper = 0;
  for (int v : order) {
    std::uint64_t used = 0;
    for (int w : g.neighbors(v))
      if (greedy[w] >= 0) used |= std::uint64_t(1) << greedy[w];
    int c = std::countr_one(used);
    greedy[v] = c;
    upper = std::max(upper, c + 1);
  }

  // Greedy clique along the order as a lower bound.
  int lower = 0;
  {
    std::vector<int> clique;
    for (int v : order) {
      bool ok = true;
      for (int u : clique)
        if (!g.adjacent(u, v)) {
          ok = false;
          break;
        }
      if (ok) clique.push_back(v);
    }
    lower = static_cast<int>(clique.size());
  }

  std::vector<int> best_coloring = greedy;
  int best = upper;
  if (best > lower) {
    std::vector<int> colors(v_count, -1);
    std::function<void(int, int)> dfs = [&](int idx, int used) {
      if (used >= best) return;
      if (idx == v_count) {
        best = used;
        best_coloring = colors;
        return;
      }
      int v = order[idx];
      std::uint64_t taken = 0;
      for (int w : g.neighbors(v))
        if (colors[w] >= 0) taken |= std::uint64_t(1) << colors[w];
      for (int c = 0; c < used && best > lower; ++c) {
        if (taken & (std::uint64_t(1) << c)) continue;
        colors[v] = c;
        dfs(idx + 1, used);
      }
      if (used + 1 < best && best > lower) {
        colors[v] = used;
        dfs(idx + 1, used + 1);
      }
      colors[v] = -1;
    };
    dfs(0, 0);
  }
  return {best, std::move(best_coloring)};
}

namespace detail {

// Memoized chromatic numbers of induced subgraphs, keyed by vertex bitmask.
// Only valid for graphs with at most 64 vertices.
struct LiftCostContext {
  const Graph& g;
  std::size_t chromatic_bound;
  std::vector<std::uint64_t> adjacency_mask;
  std::unordered_map<std::uint64_t, int> chi_cache;

  explicit LiftCostContext(const Graph& graph, std::size_t bound)
      : g(graph), chromatic_bound(bound), adjacency_mask(graph.vertex_count(), 0) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (int w : g.neighbors(static_cast<int>(v)))
        adjacency_mask[v] |= std::uint64_t(1) << w;
  }

  static std::vector<int> mask_vertices(std::uint64_t mask) {
    std::vector<int> vs;
    while (mask) {
      int v = std::countr_zero(mask);
      vs.push_back(v);
      mask &= mask - 1;
    }
    return vs;
  }

  Graph induced(std::uint64_t mask) const {
    auto vs = mask_vertices(mask);
    std::vector<int> index(g.vertex_count(), -1);
    for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (int v : vs)
      for (int w : g.neighbors(v))
        if (v < w && index[w] >= 0) edges.emplace_back(index[v], index[w]);
    return Graph(vs.size(), edges);
  }

  int chi(std::uint64_t mask) {
    bool independent = true;
    for (std::uint64_t rest = mask; rest && independent; rest &= rest - 1)
      independent = (adjacency_mask[std::countr_zero(rest)] & mask) == 0;
    if (independent) return 1;
    auto it = chi_cache.find(mask);
    if (it != chi_cache.end()) return it->second;
    int value = exact_chromatic_number(induced(mask), chromatic_bound).value;
    chi_cache.emplace(mask, value);
    return value;
  }

  // Minimum order of a proper integer labeling congruent to x mod n:
  // residues r with equal value form one class each; distinct residues can
  // always be lifted apart, equal residues on adjacent vertices need one
  // multiple of n per extra color of the induced subgraph.
  std::size_t cost(const std::vector<std::int64_t>& x, std::int64_t n) {
    std::unordered_map<std::int64_t, std::uint64_t> classes;
    for (std::size_t v = 0; v < x.size(); ++v)
      classes[mod_residue(x[v], n)] |= std::uint64_t(1) << v;
    std::size_t total = 0;
    for (const auto& [residue, mask] : classes) total += chi(mask);
    return total;
  }
};

inline bool residue_tuple_is_solution(const Graph& g, const std::vector<std::int64_t>& x,
                                      std::int64_t n) {
  std::optional<std::int64_t> remainder;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::int64_t sum = mod_residue(x[v], n);
    for (int w : g.neighbors(static_cast<int>(v)))
      sum = (sum + mod_residue(x[w], n)) % n;
    if (!remainder) remainder = sum;
    else if (*remainder != sum) return false;
  }
  return true;
}

}  // namespace detail

/// Minimum order of an integer labeling congruent to the residue solution x
/// vertex-wise mod n: the sum over residue classes of the chromatic number of
/// the induced subgraph.
inline std::size_t min_order_for_residue_solution(const Graph& g,
                                                  const std::vector<std::int64_t>& x,
                                                  std::int64_t n,
                                                  std::size_t chromatic_bound = 64) {
  if (n < 1) throw std::invalid_argument("min_order_for_residue_solution: modulus must be >= 1");
  if (x.size() != g.vertex_count())
    throw std::invalid_argument("min_order_for_residue_solution: tuple length mismatch");
  if (!detail::residue_tuple_is_solution(g, x, n))
    throw std::invalid_argument(
        "min_order_for_residue_solution: x is not a solution of the closed system mod n");
  detail::LiftCostContext ctx(g, chromatic_bound);
  return ctx.cost(x, n);
}

struct EngineOptions {
  std::uint64_t enumeration_cap = 1'000'000;
  std::size_t chromatic_bound = 64;
  std::size_t ieds_bound = 24;
  unsigned workers = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

namespace detail {

struct ScanOutcome {
  std::size_t best = static_cast<std::size_t>(-1);
  std::int64_t best_index = -1;
  bool deadline_hit = false;
};

// Scans solution indices [lo, hi); keeps the smallest lift cost and the first
// index achieving it. Stops early once an index before the current position
// is known to achieve the chromatic lower bound.
inline ScanOutcome scan_solutions(const SolutionSpace& space, const Graph& g,
                                  std::uint64_t lo, std::uint64_t hi,
                                  std::size_t lower_bound, const EngineOptions& opts,
                                  std::atomic<std::int64_t>& lb_found_at) {
  ScanOutcome out;
  SolutionEnumerator en(space, hi);
  en.seek(lo);
  LiftCostContext ctx(g, opts.chromatic_bound);
  std::vector<std::int64_t> x;
  for (std::uint64_t i = lo; i < hi; ++i) {
    if ((i - lo) % 1024 == 0) {
      if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline) {
        out.deadline_hit = true;
        break;
      }
      std::int64_t f = lb_found_at.load(std::memory_order_relaxed);
      if (f >= 0 && static_cast<std::uint64_t>(f) < i) break;
    }
    if (!en.next(x)) break;
    std::size_t cost = ctx.cost(x, space.modulus);
    if (cost < out.best) {
      out.best = cost;
      out.best_index = static_cast<std::int64_t>(i);
      if (cost == lower_bound) {
        std::int64_t expected = lb_found_at.load();
        while ((expected < 0 || expected > out.best_index) &&
               !lb_found_at.compare_exchange_weak(expected, out.best_index)) {
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Exact closed chromatic number via the residue-lift minimization: minimize
/// the lift cost over all enumerated solutions of the mod-n closed system.
/// The witness is built from the first minimizing solution in enumeration
/// order; parallel evaluation returns the same result as sequential.
inline Verdict closed_chromatic_number(const Graph& g, std::int64_t n, std::int64_t k,
                                       const EngineOptions& opts = {}) {
  if (n < 1) throw std::invalid_argument("closed_chromatic_number: modulus must be >= 1");
  if (opts.enumeration_cap == 0)
    throw std::invalid_argument("closed_chromatic_number: enumeration cap must be >= 1");
  k = mod_residue(k, n);
  if (g.vertex_count() == 0) return Verdict::exists(0, Labeling{}, "oracle");
  if (g.vertex_count() > 64) return Verdict::unknown("resource");

  ChromaticResult chrom;
  try {
    chrom = exact_chromatic_number(g, opts.chromatic_bound);
  } catch (const resource_error&) {
    return Verdict::unknown("resource");
  }
  if (n == 1) {
    Labeling witness;
    witness.values.assign(chrom.coloring.begin(), chrom.coloring.end());
    return Verdict::exists(chrom.value, std::move(witness), "oracle");
  }

  auto existence = exists_closed_coloring(g, n, k);
  if (!existence.exists) return Verdict::not_exists("oracle");
  const SolutionSpace& space = *existence.space;

  const BigInt total = space.combination_count();
  const bool truncated = total > opts.enumeration_cap;
  const std::uint64_t limit =
      truncated ? opts.enumeration_cap : static_cast<std::uint64_t>(total);
  const std::size_t lower_bound = static_cast<std::size_t>(chrom.value);

  std::atomic<std::int64_t> lb_found_at{-1};
  unsigned workers = std::max(1u, opts.workers);
  if (limit < 8192) workers = 1;
  std::vector<detail::ScanOutcome> outcomes(workers);
  if (workers == 1) {
    outcomes[0] = detail::scan_solutions(space, g, 0, limit, lower_bound, opts, lb_found_at);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = (limit + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      std::uint64_t lo = w * chunk, hi = std::min(limit, lo + chunk);
      if (lo >= hi) continue;
      pool.emplace_back([&, w, lo, hi] {
        outcomes[w] = detail::scan_solutions(space, g, lo, hi, lower_bound, opts, lb_found_at);
      });
    }
    for (auto& t : pool) t.join();
  }

  detail::ScanOutcome merged;
  for (const auto& o : outcomes) {
    merged.deadline_hit = merged.deadline_hit || o.deadline_hit;
    if (o.best_index < 0) continue;
    if (o.best < merged.best ||
        (o.best == merged.best && o.best_index < merged.best_index))
      merged = {o.best, o.best_index, merged.deadline_hit || o.deadline_hit};
  }

  const bool have_value = merged.best_index >= 0;
  const bool exact = have_value && (merged.best == lower_bound ||
                                    (!truncated && !merged.deadline_hit));
  if (!exact) {
    std::string src = merged.deadline_hit ? "budget" : "cap";
    if (have_value) src += ":ub=" + std::to_string(merged.best);
    return Verdict::unknown(src);
  }

  // Rebuild the winning solution and lift it: class of residue r gets labels
  // r + n*t for the t = 0..chi-1 colors of an optimal coloring of its induced
  // subgraph.
  SolutionEnumerator en(space, limit ? limit : 1);
  std::vector<std::int64_t> x = en.tuple_at(BigInt(merged.best_index));
  detail::LiftCostContext ctx(g, opts.chromatic_bound);
  Labeling witness;
  witness.values.resize(g.vertex_count());
  std::unordered_map<std::int64_t, std::uint64_t> classes;
  for (std::size_t v = 0; v < x.size(); ++v)
    classes[mod_residue(x[v], n)] |= std::uint64_t(1) << v;
  std::vector<std::int64_t> residues;
  for (const auto& [r, mask] : classes) residues.push_back(r);
  std::sort(residues.begin(), residues.end());
  for (std::int64_t r : residues) {
    std::uint64_t mask = classes[r];
    auto vs = detail::LiftCostContext::mask_vertices(mask);
    auto chrom_class = exact_chromatic_number(ctx.induced(mask), opts.chromatic_bound);
    for (std::size_t i = 0; i < vs.size(); ++i)
      witness.values[vs[i]] = r + n * chrom_class.coloring[i];
  }
  return Verdict::exists(merged.best, std::move(witness), "oracle");
}

/// True iff every closed neighborhood meets the set exactly once.
inline bool is_ieds(const Graph& g, const std::vector<int>& subset) {
  std::vector<int> cover(g.vertex_count(), 0);
  for (int u : subset) {
    if (u < 0 || static_cast<std::size_t>(u) >= g.vertex_count())
      throw std::invalid_argument("is_ieds: vertex index out of range");
    ++cover[u];
    for (int w : g.neighbors(u)) ++cover[w];
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (cover[v] != 1) return false;
  return true;
}

/// Lexicographically least independent efficient dominating set, or nullopt.
/// Pruned backtracking over vertices in index order, include before exclude;
/// a vertex whose last potential coverer has been decided must be covered.
inline std::optional<std::vector<int>> find_ieds(const Graph& g,
                                                 std::size_t vertex_bound = 24) {
  const int v_count = static_cast<int>(g.vertex_count());
  if (g.vertex_count() > vertex_bound)
    throw resource_error("find_ieds: vertex count " + std::to_string(v_count) +
                         " exceeds bound " + std::to_string(vertex_bound));
  if (v_count == 0) return std::vector<int>{};
  std::vector<std::vector<int>> deciding_at(v_count);
  for (int u = 0; u < v_count; ++u) {
    int last = u;
    for (int w : g.neighbors(u)) last = std::max(last, w);
    deciding_at[last].push_back(u);
  }
  std::vector<int> cover(v_count, 0), chosen;
  std::function<bool(int)> dfs = [&](int idx) -> bool {
    if (idx == v_count) return true;
    auto settled = [&](int i) {
      for (int u : deciding_at[i])
        if (cover[u] == 0) return false;
      return true;
    };
    bool can_include = cover[idx] == 0;
    for (int w : g.neighbors(idx))
      if (cover[w] != 0) can_include = false;
    if (can_include) {
      chosen.push_back(idx);
      ++cover[idx];
      for (int w : g.neighbors(idx)) ++cover[w];
      if (settled(idx) && dfs(idx + 1)) return true;
      chosen.pop_back();
      --cover[idx];
      for (int w : g.neighbors(idx)) --cover[w];
    }
    return settled(idx) && dfs(idx + 1);
  };
  if (!dfs(0)) return std::nullopt;
  return chosen;
}

/// Closed coloring built from an IEDS: members of the set are labeled k, the
/// rest take their proper-coloring color mapped into positive multiples of n.
/// Always proper with order at most chi(G)+1.
inline Labeling coloring_from_ieds(const Graph& g, const std::vector<int>& ieds,
                                   std::int64_t n, std::int64_t k,
                                   std::size_t chromatic_bound = 64) {
  if (n < 1) throw std::invalid_argument("coloring_from_ieds: modulus must be >= 1");
  if (!is_ieds(g, ieds)) throw std::invalid_argument("coloring_from_ieds: not an IEDS");
  k = mod_residue(k, n);
  auto chrom = exact_chromatic_number(g, chromatic_bound);
  std::vector<bool> in_set(g.vertex_count(), false);
  for (int u : ieds) in_set[u] = true;
  // renumber colors by first occurrence outside the set, for stable output
  std::vector<int> renumber(chrom.value, -1);
  int next = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!in_set[v] && renumber[chrom.coloring[v]] < 0) renumber[chrom.coloring[v]] = next++;
  Labeling out;
  out.values.resize(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out.values[v] = in_set[v] ? k : n * (1 + renumber[chrom.coloring[v]]);
  return out;
}

/// Record of one additivity probe: is chi_{n,k1+k2} <= chi_{n,k1} + chi_{n,k2}?
struct AdditivityProbe {
  Verdict lhs;           // chi_{n,k1+k2}
  Verdict k1_verdict;
  Verdict k2_verdict;
  std::optional<std::size_t> rhs_sum;
  std::optional<bool> subadditive;
};

inline AdditivityProbe probe_additivity(const Graph& g, std::int64_t n, std::int64_t k1,
                                        std::int64_t k2, const EngineOptions& opts = {}) {
  AdditivityProbe probe;
  probe.lhs = closed_chromatic_number(g, n, k1 + k2, opts);
  probe.k1_verdict = closed_chromatic_number(g, n, k1, opts);
  probe.k2_verdict = closed_chromatic_number(g, n, k2, opts);
  if (probe.k1_verdict.is_exists() && probe.k2_verdict.is_exists()) {
    probe.rhs_sum = *probe.k1_verdict.value + *probe.k2_verdict.value;
    // a lhs that does not exist, or exceeds the sum, would be a genuine
    // counterexample to subadditivity; an unknown lhs leaves it undecided
    if (!probe.lhs.is_unknown())
      probe.subadditive = probe.lhs.is_exists() && *probe.lhs.value <= *probe.rhs_sum;
  }
  return probe;
}

}  // namespace closedchroma
