#pragma once

// Voters, weighted threshold rules, their AND/OR composition and the
// characteristic function of the resulting simple voting game.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qmvpower/errors.hpp"
#include "qmvpower/exact.hpp"

namespace qmv {

struct Voter {
  std::string id;
  std::string name;
  std::int64_t pop_weight = 0;   // quantized population units
  std::int64_t seat_weight = 1;  // member states represented (k for a bloc of k)

  friend bool operator==(const Voter&, const Voter&) = default;
};

/// Ordered, non-empty list of voters with unique ids and cached totals.
class Roster {
public:
  Roster() = default;

  explicit Roster(std::vector<Voter> voters) : voters_(std::move(voters)) {
    if (voters_.empty()) throw ValidationError("roster must contain at least one voter");
    for (std::size_t k = 0; k < voters_.size(); ++k) {
      const Voter& v = voters_[k];
      if (v.id.empty()) throw ValidationError("voter at position " + std::to_string(k + 1) + " has an empty id");
      if (v.pop_weight < 0) throw ValidationError("voter " + v.id + " has negative population weight");
      if (v.seat_weight < 1) throw ValidationError("voter " + v.id + " has seat weight below 1");
      if (!index_.emplace(v.id, k).second) throw ValidationError("duplicate voter id " + v.id);
      total_pop_ += v.pop_weight;
      total_seats_ += v.seat_weight;
    }
  }

  const std::vector<Voter>& voters() const noexcept { return voters_; }
  std::size_t size() const noexcept { return voters_.size(); }
  const Voter& operator[](std::size_t k) const { return voters_[k]; }
  std::int64_t total_pop() const noexcept { return total_pop_; }
  std::int64_t total_seats() const noexcept { return total_seats_; }

  std::optional<std::size_t> index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(const std::string& id) const {
    auto k = index_of(id);
    if (!k) throw InputError("unknown voter id " + id);
    return *k;
  }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  friend bool operator==(const Roster& a, const Roster& b) { return a.voters_ == b.voters_; }

private:
  std::vector<Voter> voters_;
  std::unordered_map<std::string, std::size_t> index_;
  std::int64_t total_pop_ = 0;
  std::int64_t total_seats_ = 0;
};

enum class WeightKind { Population, Seats };

inline const char* to_string(WeightKind k) { return k == WeightKind::Population ? "population" : "seats"; }

/// Wins iff the coalition's weight of the given kind reaches the quota.
struct WeightedRule {
  WeightKind kind = WeightKind::Seats;
  std::int64_t quota = 1;

  bool wins(std::int64_t pop, std::int64_t seats) const {
    return (kind == WeightKind::Population ? pop : seats) >= quota;
  }

  friend bool operator==(const WeightedRule&, const WeightedRule&) = default;
};

/// AND/OR tree over weighted threshold rules. Monotone by construction.
class RuleExpr {
public:
  enum class Op { Leaf, All, Any };

  static RuleExpr leaf(WeightedRule rule) {
    RuleExpr e;
    e.op_ = Op::Leaf;
    e.rule_ = rule;
    return e;
  }
  static RuleExpr all_of(std::vector<RuleExpr> children) { return node(Op::All, std::move(children)); }
  static RuleExpr any_of(std::vector<RuleExpr> children) { return node(Op::Any, std::move(children)); }

  Op op() const noexcept { return op_; }
  const WeightedRule& rule() const noexcept { return rule_; }
  const std::vector<RuleExpr>& children() const noexcept { return children_; }

  bool wins(std::int64_t pop, std::int64_t seats) const {
    switch (op_) {
      case Op::Leaf:
        return rule_.wins(pop, seats);
      case Op::All:
        for (const auto& c : children_)
          if (!c.wins(pop, seats)) return false;
        return true;
      case Op::Any:
        for (const auto& c : children_)
          if (c.wins(pop, seats)) return true;
        return false;
    }
    return false;
  }

  /// Leaves in left-to-right order.
  std::vector<WeightedRule> leaves() const {
    std::vector<WeightedRule> out;
    collect(out);
    return out;
  }

  std::string str() const {
    if (op_ == Op::Leaf) return std::string(to_string(rule_.kind)) + ">=" + std::to_string(rule_.quota);
    std::string s = "(";
    for (std::size_t k = 0; k < children_.size(); ++k) {
      if (k) s += op_ == Op::All ? " AND " : " OR ";
      s += children_[k].str();
    }
    return s + ")";
  }

  friend bool operator==(const RuleExpr&, const RuleExpr&) = default;

private:
  static RuleExpr node(Op op, std::vector<RuleExpr> children) {
    if (children.size() < 2) throw InputError("AND/OR nodes need at least two children");
    RuleExpr e;
    e.op_ = op;
    e.children_ = std::move(children);
    return e;
  }

  void collect(std::vector<WeightedRule>& out) const {
    if (op_ == Op::Leaf) {
      out.push_back(rule_);
      return;
    }
    for (const auto& c : children_) c.collect(out);
  }

  Op op_ = Op::Leaf;
  WeightedRule rule_{};
  std::vector<RuleExpr> children_;
};

/// Options of the double-majority rule with optional blocking-minority clause.
struct QmvOptions {
  Fraction pop_fraction{65, 100};
  Fraction seat_fraction{55, 100};
  std::int64_t blocking_members = 4;
  bool include_blocking = false;

  friend bool operator==(const QmvOptions&, const QmvOptions&) = default;
};

/// A roster together with the rule deciding which coalitions win.
/// v(empty) = 0 and v(N) = 1 are checked on construction.
class VotingGame {
public:
  VotingGame(Roster roster, RuleExpr expr, std::optional<QmvOptions> qmv = std::nullopt)
      : roster_(std::move(roster)), expr_(std::move(expr)), qmv_(std::move(qmv)) {
    if (roster_.size() == 0) throw ValidationError("game needs a non-empty roster");
    for (const WeightedRule& r : expr_.leaves()) {
      const std::int64_t total = r.kind == WeightKind::Population ? roster_.total_pop() : roster_.total_seats();
      if (r.quota < 1 || r.quota > total) {
        throw ValidationError(std::string(to_string(r.kind)) + " quota " + std::to_string(r.quota) +
                              " outside 1.." + std::to_string(total));
      }
    }
    if (wins(0, 0)) throw ValidationError("empty coalition must lose");
    if (!wins(roster_.total_pop(), roster_.total_seats())) throw ValidationError("grand coalition must win");
  }

  const Roster& roster() const noexcept { return roster_; }
  const RuleExpr& expr() const noexcept { return expr_; }
  const std::optional<QmvOptions>& qmv() const noexcept { return qmv_; }
  std::size_t size() const noexcept { return roster_.size(); }

  bool wins(std::int64_t pop, std::int64_t seats) const { return expr_.wins(pop, seats); }

  /// v(S) for a coalition given by voter ids. Duplicated ids count once.
  int evaluate(std::span<const std::string> coalition) const {
    std::vector<bool> mask(roster_.size(), false);
    for (const auto& id : coalition) mask[roster_.require(id)] = true;
    return evaluate_mask(mask);
  }

  /// v(S) for a coalition given as a membership mask in roster order.
  int evaluate_mask(const std::vector<bool>& member) const {
    if (member.size() != roster_.size()) throw InputError("coalition mask size does not match roster");
    std::int64_t pop = 0, seats = 0;
    for (std::size_t k = 0; k < member.size(); ++k) {
      if (!member[k]) continue;
      pop += roster_[k].pop_weight;
      seats += roster_[k].seat_weight;
    }
    return wins(pop, seats) ? 1 : 0;
  }

private:
  Roster roster_;
  RuleExpr expr_;
  std::optional<QmvOptions> qmv_;
};

/// Smallest q with q / total >= fraction, i.e. ceil(fraction * total).
inline std::int64_t quota_from_fraction(std::int64_t total, Fraction fraction) {
  if (total < 1) throw InputError("total must be positive");
  fraction.validate("fraction");
  const __int128 prod = static_cast<__int128>(fraction.num) * total;
  return static_cast<std::int64_t>((prod + fraction.den - 1) / fraction.den);
}

/// (population AND seats) [OR blocking], the Council qualified-majority rule.
inline VotingGame build_qmv(const Roster& roster, const QmvOptions& options = {}) {
  if (roster.size() == 0) throw ValidationError("roster must be non-empty");
  if (roster.total_pop() <= 0) throw ValidationError("roster has zero total population");
  options.pop_fraction.validate("pop_fraction");
  options.seat_fraction.validate("seat_fraction");

  const WeightedRule pop{WeightKind::Population, quota_from_fraction(roster.total_pop(), options.pop_fraction)};
  const WeightedRule seats{WeightKind::Seats, quota_from_fraction(roster.total_seats(), options.seat_fraction)};
  RuleExpr double_majority = RuleExpr::all_of({RuleExpr::leaf(pop), RuleExpr::leaf(seats)});
  if (!options.include_blocking) return VotingGame(roster, std::move(double_majority), options);

  if (options.blocking_members < 1) throw InputError("blocking_members must be at least 1");
  const std::int64_t block_quota = roster.total_seats() - (options.blocking_members - 1);
  if (block_quota < 1) {
    throw ValidationError("blocking minority of " + std::to_string(options.blocking_members) +
                          " members is impossible with " + std::to_string(roster.total_seats()) + " seats");
  }
  RuleExpr expr = RuleExpr::any_of({std::move(double_majority), RuleExpr::leaf({WeightKind::Seats, block_quota})});
  return VotingGame(roster, std::move(expr), options);
}

struct Bloc {
  std::string id;
  std::string name;
  std::vector<std::string> members;

  friend bool operator==(const Bloc&, const Bloc&) = default;
};

/// Disjoint blocs of voters; voters not mentioned stay singletons.
struct BlocPartition {
  std::vector<Bloc> blocs;

  bool empty() const noexcept { return blocs.empty(); }

  void validate(const Roster& roster) const {
    std::unordered_map<std::string, std::string> owner;
    std::unordered_set<std::string> bloc_ids;
    for (const Bloc& b : blocs) {
      if (b.id.empty()) throw InputError("bloc with empty id");
      if (!bloc_ids.insert(b.id).second) throw InputError("duplicate bloc id " + b.id);
      if (b.members.empty()) throw InputError("bloc " + b.id + " has no members");
      for (const auto& m : b.members) {
        if (!roster.contains(m)) throw InputError("bloc " + b.id + " references unknown voter " + m);
        auto [it, fresh] = owner.emplace(m, b.id);
        if (!fresh) {
          throw InputError(it->second == b.id ? "voter " + m + " listed twice in bloc " + b.id
                                              : "blocs " + it->second + " and " + b.id + " overlap on " + m);
        }
      }
    }
  }

  friend bool operator==(const BlocPartition&, const BlocPartition&) = default;
};

/// Replaces every bloc by one voter summing its members' weights. The merged
/// voter takes the roster position of its first member in roster order.
inline Roster merge_blocs(const Roster& roster, const BlocPartition& partition) {
  partition.validate(roster);
  if (partition.empty()) return roster;

  std::vector<std::ptrdiff_t> bloc_of(roster.size(), -1);
  for (std::size_t b = 0; b < partition.blocs.size(); ++b)
    for (const auto& m : partition.blocs[b].members) bloc_of[roster.require(m)] = static_cast<std::ptrdiff_t>(b);

  std::vector<Voter> merged(partition.blocs.size());
  for (std::size_t b = 0; b < partition.blocs.size(); ++b) {
    merged[b].id = partition.blocs[b].id;
    merged[b].name = partition.blocs[b].name.empty() ? partition.blocs[b].id : partition.blocs[b].name;
    merged[b].seat_weight = 0;
  }
  for (std::size_t k = 0; k < roster.size(); ++k) {
    if (bloc_of[k] < 0) continue;
    Voter& m = merged[static_cast<std::size_t>(bloc_of[k])];
    m.pop_weight += roster[k].pop_weight;
    m.seat_weight += roster[k].seat_weight;
  }

  std::vector<bool> placed(partition.blocs.size(), false);
  std::vector<Voter> out;
  out.reserve(roster.size());
  for (std::size_t k = 0; k < roster.size(); ++k) {
    if (bloc_of[k] < 0) {
      out.push_back(roster[k]);
    } else if (auto b = static_cast<std::size_t>(bloc_of[k]); !placed[b]) {
      placed[b] = true;
      out.push_back(merged[b]);
    }
  }
  return Roster(std::move(out));
}

}  // namespace qmv
