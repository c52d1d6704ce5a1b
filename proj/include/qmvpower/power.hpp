#pragma once

// Exact Banzhaf and Shapley-Shubik indices by dynamic programming over
// generating functions.
//
// For every voter i a table counts the coalitions S of the other voters by
// (player count t, excess seats e, population w), where the seat weight of S
// is t + e. Since almost every voter has seat weight 1 the excess axis stays
// tiny and the table is about n x W cells. The rule expression only depends
// on (seats, population), so winning cells are classified once on a grid and
// i is a swing in every cell where S loses and S + i wins.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qmvpower/errors.hpp"
#include "qmvpower/exact.hpp"
#include "qmvpower/game.hpp"

namespace qmv {

enum class Family : unsigned { Banzhaf = 1, Shapley = 2, Both = 3 };

inline bool has(Family set, Family f) { return (static_cast<unsigned>(set) & static_cast<unsigned>(f)) != 0; }

struct VoterPower {
  Voter voter;
  /// swings_by_size[t]: coalitions S of the others with |S| = t where the voter is critical
  std::vector<BigInt> swings_by_size;
  BigInt banzhaf_score;   // eta_i
  Rational banzhaf_value;  // eta_i / 2^(n-1)
  Rational banzhaf_index;  // eta_i / sum_j eta_j
  BigInt pivot_weight;     // sum_t swings_by_size[t] * t! * (n-1-t)!
  Rational shapley_shubik;  // pivot_weight / n!
};

struct PowerResult {
  std::size_t n = 0;
  std::vector<WeightedRule> rules;  // leaves of the rule expression
  std::string rule_text;
  bool include_blocking = false;
  bool has_banzhaf = false;
  bool has_shapley = false;
  std::vector<VoterPower> voters;  // roster order

  const VoterPower* find(const std::string& id) const {
    for (const auto& v : voters)
      if (v.voter.id == id) return &v;
    return nullptr;
  }

  const VoterPower& at(const std::string& id) const {
    if (const auto* v = find(id)) return *v;
    throw InputError("no voter " + id + " in result");
  }
};

struct EngineOptions {
  /// Upper bound on cells of a single swing table. 36 x 2e5 population
  /// units with a few excess seats fits comfortably.
  std::size_t max_cells = std::size_t{1} << 26;
  /// Concurrent per-voter DPs; 0 picks hardware concurrency.
  unsigned workers = 0;
};

/// Coalition counts of all voters except one, indexed (t, e, w).
template <class Count>
class SwingTable {
public:
  SwingTable(std::size_t sizes, std::size_t excess, std::size_t weights)
      : sizes_(sizes), excess_(excess), weights_(weights), cells_(sizes * excess * weights, Count{0}) {}

  std::size_t sizes() const noexcept { return sizes_; }
  std::size_t excess() const noexcept { return excess_; }
  std::size_t weights() const noexcept { return weights_; }

  Count& at(std::size_t t, std::size_t e, std::size_t w) { return cells_[(t * excess_ + e) * weights_ + w]; }
  const Count& at(std::size_t t, std::size_t e, std::size_t w) const {
    return cells_[(t * excess_ + e) * weights_ + w];
  }
  Count* row(std::size_t t, std::size_t e) { return cells_.data() + (t * excess_ + e) * weights_; }
  const Count* row(std::size_t t, std::size_t e) const { return cells_.data() + (t * excess_ + e) * weights_; }

  const std::vector<Count>& cells() const noexcept { return cells_; }

private:
  std::size_t sizes_, excess_, weights_;
  std::vector<Count> cells_;
};

namespace detail {

struct TableShape {
  std::size_t sizes, excess, weights;
  std::size_t cells() const { return sizes * excess * weights; }
};

inline TableShape table_shape(const Roster& roster) {
  std::int64_t excess = 0;
  for (const auto& v : roster.voters()) excess += v.seat_weight - 1;
  return {roster.size(), static_cast<std::size_t>(excess) + 1, static_cast<std::size_t>(roster.total_pop()) + 1};
}

inline void check_budget(const Roster& roster, const EngineOptions& options) {
  const TableShape s = table_shape(roster);
  const long double cells = static_cast<long double>(s.sizes) * s.excess * s.weights;
  if (cells > static_cast<long double>(options.max_cells)) {
    throw ResourceError("swing table of " + std::to_string(s.sizes) + " sizes x " + std::to_string(s.excess) +
                        " excess seats x " + std::to_string(s.weights) + " population cells exceeds the budget of " +
                        std::to_string(options.max_cells) + " cells");
  }
}

/// win[s * (total_pop + 1) + w] = v(any coalition with s seats and population w)
inline std::vector<std::uint8_t> win_grid(const VotingGame& game) {
  const auto pops = static_cast<std::size_t>(game.roster().total_pop()) + 1;
  const auto seats = static_cast<std::size_t>(game.roster().total_seats()) + 1;
  std::vector<std::uint8_t> grid(pops * seats);
  for (std::size_t s = 0; s < seats; ++s)
    for (std::size_t w = 0; w < pops; ++w)
      grid[s * pops + w] = game.wins(static_cast<std::int64_t>(w), static_cast<std::int64_t>(s)) ? 1 : 0;
  return grid;
}

struct Reach {
  std::size_t t = 0, e = 0, w = 0;
};

/// Multiplies out prod_{j != voter} (1 + x y^{excess_j} z^{pop_j}) in place.
/// Rows are visited by descending size so every source row is still unmodified
/// when it is read; destination rows always have a larger size.
template <class Count>
Reach fill(const Roster& roster, std::size_t voter, SwingTable<Count>& table) {
  table.at(0, 0, 0) = 1;
  // Blocs go last so the excess axis stays at one row for most of the product.
  std::vector<std::size_t> order;
  order.reserve(roster.size());
  for (std::size_t j = 0; j < roster.size(); ++j)
    if (j != voter) order.push_back(j);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return roster[a].seat_weight < roster[b].seat_weight; });
  Reach reach;
  for (std::size_t j : order) {
    const auto ex = static_cast<std::size_t>(roster[j].seat_weight - 1);
    const auto p = static_cast<std::size_t>(roster[j].pop_weight);
    for (std::size_t t = reach.t + 1; t-- > 0;) {
      for (std::size_t e = reach.e + 1; e-- > 0;) {
        const Count* src = table.row(t, e);
        Count* dst = table.row(t + 1, e + ex) + p;
        for (std::size_t w = 0; w <= reach.w; ++w) dst[w] += src[w];
      }
    }
    ++reach.t;
    reach.e += ex;
    reach.w += p;
  }
  return reach;
}

template <class Count>
std::vector<BigInt> swings_for(const VotingGame& game, const std::vector<std::uint8_t>& grid, std::size_t voter) {
  const Roster& roster = game.roster();
  const std::size_t n = roster.size();
  const TableShape shape = table_shape(roster);
  SwingTable<Count> table(shape.sizes, shape.excess, shape.weights);
  const auto [reach_t, reach_e, reach_w] = fill(roster, voter, table);

  const auto pops = static_cast<std::size_t>(roster.total_pop()) + 1;
  const auto own_seats = static_cast<std::size_t>(roster[voter].seat_weight);
  const auto own_pop = static_cast<std::size_t>(roster[voter].pop_weight);
  std::vector<BigInt> swings(n, 0);
  for (std::size_t t = 0; t <= reach_t; ++t) {
    Count acc{0};
    for (std::size_t e = 0; e <= reach_e; ++e) {
      const std::size_t s = t + e;
      const std::uint8_t* lose_row = grid.data() + s * pops;
      const std::uint8_t* win_row = grid.data() + (s + own_seats) * pops + own_pop;
      const Count* cells = table.row(t, e);
      for (std::size_t w = 0; w <= reach_w; ++w)
        if (!lose_row[w] && win_row[w]) acc += cells[w];
    }
    swings[t] = BigInt(acc);
  }
  return swings;
}

/// Per-voter swing counts by coalition size, roster order.
inline std::vector<std::vector<BigInt>> all_swings(const VotingGame& game, const EngineOptions& options) {
  check_budget(game.roster(), options);
  const std::size_t n = game.size();
  const auto grid = win_grid(game);

  // Cell counts never exceed 2^(n-1); machine words are exact up to n = 64.
  auto one = [&](std::size_t i) {
    return n <= 64 ? swings_for<std::uint64_t>(game, grid, i) : swings_for<BigInt>(game, grid, i);
  };

  std::vector<std::vector<BigInt>> out(n);
  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t per_table = table_shape(game.roster()).cells();
  const std::size_t fit = std::max<std::size_t>(1, options.max_cells / std::max<std::size_t>(1, per_table));
  workers = static_cast<unsigned>(std::min<std::size_t>({workers, fit, n}));

  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < n; i = next++) out[i] = one(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline PowerResult assemble(const VotingGame& game, std::vector<std::vector<BigInt>> swings, Family families) {
  const std::size_t n = game.size();
  PowerResult r;
  r.n = n;
  r.rules = game.expr().leaves();
  r.rule_text = game.expr().str();
  r.include_blocking = game.qmv() && game.qmv()->include_blocking;
  r.has_banzhaf = has(families, Family::Banzhaf);
  r.has_shapley = has(families, Family::Shapley);
  r.voters.resize(n);

  const auto fact = factorials(n);
  const BigInt half_cube = BigInt(1) << (n - 1);
  BigInt total_score = 0;
  for (std::size_t i = 0; i < n; ++i) {
    VoterPower& vp = r.voters[i];
    vp.voter = game.roster()[i];
    vp.swings_by_size = std::move(swings[i]);
    for (std::size_t t = 0; t < n; ++t) {
      vp.banzhaf_score += vp.swings_by_size[t];
      vp.pivot_weight += vp.swings_by_size[t] * fact[t] * fact[n - 1 - t];
    }
    total_score += vp.banzhaf_score;
  }
  if (total_score == 0) throw NormalizationError("no voter is critical in any coalition");
  for (auto& vp : r.voters) {
    if (r.has_banzhaf) {
      vp.banzhaf_value = Rational(vp.banzhaf_score) / Rational(half_cube);
      vp.banzhaf_index = Rational(vp.banzhaf_score) / Rational(total_score);
    }
    if (r.has_shapley) vp.shapley_shubik = Rational(vp.pivot_weight) / Rational(fact[n]);
  }
  return r;
}

}  // namespace detail

/// Counts of coalitions of everyone but `voter`, by (size, excess seats, population).
/// Exposed for inspection and tests; the engine builds these internally.
template <class Count = BigInt>
SwingTable<Count> swing_table(const VotingGame& game, std::size_t voter, const EngineOptions& options = {}) {
  detail::check_budget(game.roster(), options);
  const Roster& roster = game.roster();
  const auto shape = detail::table_shape(roster);
  if (voter >= roster.size()) throw InputError("voter index out of range");
  SwingTable<Count> table(shape.sizes, shape.excess, shape.weights);
  detail::fill(roster, voter, table);
  return table;
}

inline PowerResult compute(const VotingGame& game, Family families, const EngineOptions& options = {}) {
  return detail::assemble(game, detail::all_swings(game, options), families);
}

inline PowerResult banzhaf(const VotingGame& game, const EngineOptions& options = {}) {
  return compute(game, Family::Banzhaf, options);
}

inline PowerResult shapley_shubik(const VotingGame& game, const EngineOptions& options = {}) {
  return compute(game, Family::Shapley, options);
}

/// Both index families from one set of swing tables.
inline PowerResult compute_all(const VotingGame& game, const EngineOptions& options = {}) {
  return compute(game, Family::Both, options);
}

}  // namespace qmv
