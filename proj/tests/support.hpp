#pragma once

// Random game generators shared by the property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qmvpower/game.hpp"

namespace qmv::test_support {

struct GameSpace {
  std::size_t min_n = 1;
  std::size_t max_n = 12;
  std::int64_t max_pop = 60;
  bool allow_blocs = true;  // occasional seat weights above 1
};

inline Roster random_roster(std::mt19937_64& rng, const GameSpace& space) {
  std::uniform_int_distribution<std::size_t> size(space.min_n, space.max_n);
  std::uniform_int_distribution<std::int64_t> pop(0, space.max_pop);
  std::uniform_int_distribution<int> coin(0, 5);
  std::uniform_int_distribution<std::int64_t> seats(2, 4);
  const std::size_t n = size(rng);
  std::vector<Voter> voters;
  for (std::size_t k = 0; k < n; ++k) {
    Voter v{"v" + std::to_string(k), "Voter " + std::to_string(k), pop(rng), 1};
    if (space.allow_blocs && coin(rng) == 0) v.seat_weight = seats(rng);
    voters.push_back(v);
  }
  if (std::none_of(voters.begin(), voters.end(), [](const Voter& v) { return v.pop_weight > 0; }))
    voters.front().pop_weight = 1;
  return Roster(std::move(voters));
}

inline Fraction random_fraction(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(1, 100);
  return {num(rng), 100};
}

/// Single population rule, single seat rule, QMV with or without the
/// blocking clause, or a random AND/OR tree of threshold rules.
inline VotingGame random_game(std::mt19937_64& rng, const GameSpace& space = {}) {
  const Roster roster = random_roster(rng, space);
  std::uniform_int_distribution<int> kind(0, 4);
  auto quota = [&](WeightKind k) {
    const std::int64_t total = k == WeightKind::Population ? roster.total_pop() : roster.total_seats();
    return std::uniform_int_distribution<std::int64_t>(1, total)(rng);
  };
  switch (kind(rng)) {
    case 0:
      return VotingGame(roster, RuleExpr::leaf({WeightKind::Population, quota(WeightKind::Population)}));
    case 1:
      return VotingGame(roster, RuleExpr::leaf({WeightKind::Seats, quota(WeightKind::Seats)}));
    case 2:
    case 3: {
      QmvOptions o{random_fraction(rng), random_fraction(rng), 0, false};
      o.blocking_members = std::uniform_int_distribution<std::int64_t>(1, roster.total_seats())(rng);
      o.include_blocking = kind(rng) % 2 == 0;
      return build_qmv(roster, o);
    }
    default: {
      auto leaf = [&] {
        const WeightKind k = kind(rng) % 2 ? WeightKind::Population : WeightKind::Seats;
        return RuleExpr::leaf({k, quota(k)});
      };
      RuleExpr inner = kind(rng) % 2 ? RuleExpr::all_of({leaf(), leaf()}) : RuleExpr::any_of({leaf(), leaf()});
      RuleExpr expr = kind(rng) % 2 ? RuleExpr::any_of({inner, leaf()}) : RuleExpr::all_of({inner, leaf()});
      return VotingGame(roster, expr);
    }
  }
}

/// Weighted game with only seat weights, e.g. the 1958 EEC council.
inline VotingGame seat_game(const std::vector<std::int64_t>& seats, std::int64_t quota) {
  std::vector<Voter> voters;
  for (std::size_t k = 0; k < seats.size(); ++k)
    voters.push_back({"p" + std::to_string(k), "Player " + std::to_string(k), 0, seats[k]});
  return VotingGame(Roster(std::move(voters)), RuleExpr::leaf({WeightKind::Seats, quota}));
}

/// Weighted game with only population weights.
inline VotingGame pop_game(const std::vector<std::int64_t>& pops, std::int64_t quota) {
  std::vector<Voter> voters;
  for (std::size_t k = 0; k < pops.size(); ++k)
    voters.push_back({"p" + std::to_string(k), "Player " + std::to_string(k), pops[k], 1});
  return VotingGame(Roster(std::move(voters)), RuleExpr::leaf({WeightKind::Population, quota}));
}

}  // namespace qmv::test_support
