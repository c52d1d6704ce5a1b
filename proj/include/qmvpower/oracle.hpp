#pragma once

// Brute-force reference for the power indices. Enumerates every coalition of
// the full player set, so it shares nothing with the DP engine except the
// game's characteristic function. Used to validate the engine and to settle
// values where published numbers disagree.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "qmvpower/errors.hpp"
#include "qmvpower/exact.hpp"
#include "qmvpower/game.hpp"
#include "qmvpower/power.hpp"

namespace qmv::oracle {

inline constexpr std::size_t default_limit = 22;

namespace detail {

/// v(S) for all 2^n coalitions, S encoded as a bit mask in roster order.
/// Walks the reflected Gray code so each step adds or removes one voter.
inline std::vector<std::uint8_t> characteristic(const VotingGame& game) {
  const Roster& roster = game.roster();
  const std::size_t n = roster.size();
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::uint8_t> v(count, 0);
  std::int64_t pop = 0, seats = 0;
  std::uint64_t mask = 0;
  v[0] = game.wins(0, 0) ? 1 : 0;
  for (std::uint64_t k = 1; k < count; ++k) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(k));
    const std::uint64_t flip = std::uint64_t{1} << bit;
    const std::int64_t sign = (mask & flip) ? -1 : 1;
    mask ^= flip;
    pop += sign * roster[bit].pop_weight;
    seats += sign * roster[bit].seat_weight;
    v[mask] = game.wins(pop, seats) ? 1 : 0;
  }
  return v;
}

inline void guard(const VotingGame& game, std::size_t limit) {
  if (game.size() > limit) {
    throw RefusalError("oracle refuses " + std::to_string(game.size()) + " players (limit " + std::to_string(limit) +
                       "); raise the limit explicitly to enumerate 2^" + std::to_string(game.size()) + " coalitions");
  }
  if (game.size() > 40) throw RefusalError("oracle cannot address more than 2^40 coalitions");
}

/// swings[i][t]: coalitions S without i, |S| = t, where i turns S from losing to winning.
inline std::vector<std::vector<BigInt>> swings(const VotingGame& game) {
  const std::size_t n = game.size();
  const auto v = characteristic(game);
  std::vector<std::vector<std::uint64_t>> counts(n, std::vector<std::uint64_t>(n, 0));
  for (std::uint64_t s = 0; s < v.size(); ++s) {
    if (v[s]) continue;
    const auto size = static_cast<std::size_t>(std::popcount(s));
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (!(s & bit) && v[s | bit]) ++counts[i][size];
    }
  }
  std::vector<std::vector<BigInt>> out(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t) out[i][t] = counts[i][t];
  return out;
}

inline PowerResult shell(const VotingGame& game) {
  PowerResult r;
  r.n = game.size();
  r.rules = game.expr().leaves();
  r.rule_text = game.expr().str();
  r.include_blocking = game.qmv() && game.qmv()->include_blocking;
  r.voters.resize(game.size());
  for (std::size_t i = 0; i < game.size(); ++i) r.voters[i].voter = game.roster()[i];
  return r;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  BigInt b = 1;
  for (std::size_t j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}

inline void fill_banzhaf(PowerResult& r, const std::vector<std::vector<BigInt>>& sw) {
  BigInt total = 0;
  for (std::size_t i = 0; i < r.n; ++i) {
    auto& vp = r.voters[i];
    vp.swings_by_size = sw[i];
    vp.banzhaf_score = 0;
    for (const auto& c : sw[i]) vp.banzhaf_score += c;
    total += vp.banzhaf_score;
  }
  if (total == 0) throw NormalizationError("no voter is critical in any coalition");
  const Rational coalitions(BigInt(1) << (r.n - 1));
  for (auto& vp : r.voters) {
    vp.banzhaf_value = Rational(vp.banzhaf_score) / coalitions;
    vp.banzhaf_index = Rational(vp.banzhaf_score) / Rational(total);
  }
  r.has_banzhaf = true;
}

// Each swing at size t is the pivot position in t!(n-1-t)! of the n!
// orderings, i.e. contributes 1 / (n * C(n-1, t)).
inline void fill_shapley(PowerResult& r, const std::vector<std::vector<BigInt>>& sw) {
  const std::size_t n = r.n;
  BigInt n_factorial = 1;
  for (std::size_t k = 2; k <= n; ++k) n_factorial *= k;
  for (std::size_t i = 0; i < n; ++i) {
    auto& vp = r.voters[i];
    vp.swings_by_size = sw[i];
    vp.shapley_shubik = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (sw[i][t] == 0) continue;
      vp.shapley_shubik += Rational(sw[i][t]) / Rational(BigInt(n) * binomial(n - 1, t));
    }
    vp.pivot_weight = numerator_of(vp.shapley_shubik * Rational(n_factorial));
  }
  r.has_shapley = true;
}

}  // namespace detail

inline PowerResult oracle_banzhaf(const VotingGame& game, std::size_t limit = default_limit) {
  detail::guard(game, limit);
  auto r = detail::shell(game);
  detail::fill_banzhaf(r, detail::swings(game));
  return r;
}

inline PowerResult oracle_shapley(const VotingGame& game, std::size_t limit = default_limit) {
  detail::guard(game, limit);
  auto r = detail::shell(game);
  detail::fill_shapley(r, detail::swings(game));
  return r;
}

inline PowerResult oracle_all(const VotingGame& game, std::size_t limit = default_limit) {
  detail::guard(game, limit);
  auto r = detail::shell(game);
  const auto sw = detail::swings(game);
  detail::fill_banzhaf(r, sw);
  detail::fill_shapley(r, sw);
  return r;
}

}  // namespace qmv::oracle
