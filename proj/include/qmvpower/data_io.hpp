#pragma once

// Population tables and scenario files.
//
// Population CSV (UTF-8):
//   # unit: <label>          optional, declares the population unit
//   # anything else          comment
//   id,name,pop[,seats]      header, exactly one of these two forms
//   DE,Germany,1881[,1]      one row per voter, integer weights
//
// Scenario file, one "key = value" per line, '#' comments:
//   name = eu27
//   members = DE FR IT ...
//   bloc.v4 = PL CZ HU SK
//   pop_fraction = 65/100
//   seat_fraction = 55/100
//   blocking_members = 4
//   include_blocking = false
//   rule = qmv | seats | population

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qmvpower/errors.hpp"
#include "qmvpower/exact.hpp"
#include "qmvpower/game.hpp"

namespace qmv {

struct PopulationRow {
  std::string id;
  std::string name;
  std::int64_t pop = 0;
  std::int64_t seats = 1;

  friend bool operator==(const PopulationRow&, const PopulationRow&) = default;
};

struct PopulationTable {
  std::string unit;
  std::vector<PopulationRow> rows;

  std::int64_t total_pop() const {
    std::int64_t s = 0;
    for (const auto& r : rows) s += r.pop;
    return s;
  }

  const PopulationRow* find(const std::string& id) const {
    for (const auto& r : rows)
      if (r.id == id) return &r;
    return nullptr;
  }

  friend bool operator==(const PopulationTable&, const PopulationTable&) = default;
};

/// Which rule a scenario plays. `qmv` is the double majority; the single-rule
/// forms use seat_fraction or pop_fraction alone.
enum class RuleKind { Qmv, Seats, Population };

inline const char* to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Qmv:
      return "qmv";
    case RuleKind::Seats:
      return "seats";
    case RuleKind::Population:
      return "population";
  }
  return "qmv";
}

struct ScenarioConfig {
  std::string name;
  std::vector<std::string> members;
  std::vector<Bloc> blocs;
  QmvOptions options;
  RuleKind rule = RuleKind::Qmv;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace io_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    std::size_t start = k;
    while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    if (k > start) out.emplace_back(s.substr(start, k - start));
  }
  return out;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  // U+2212 MINUS SIGN is read as '-' so negative weights get a validation
  // error instead of a parse error.
  std::string buf(s);
  if (buf.rfind("\xE2\x88\x92", 0) == 0) buf.replace(0, 3, "-");
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{} || ptr != buf.data() + buf.size() || buf.empty()) return std::nullopt;
  return v;
}

inline bool valid_id(std::string_view id) {
  return !id.empty() && std::none_of(id.begin(), id.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '#' || c == '=';
  });
}

}  // namespace io_detail

inline PopulationTable load_population_table(std::string_view text) {
  using namespace io_detail;
  PopulationTable table;
  bool have_header = false, have_seats = false;
  std::unordered_map<std::string, std::size_t> seen;
  const auto all = lines(text);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const std::size_t lineno = k + 1;
    const std::string_view line = trim(all[k]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (body.rfind("unit:", 0) == 0) table.unit = std::string(trim(body.substr(5)));
      continue;
    }
    auto fields = split(line, ',');
    for (auto& f : fields) f = trim(f);
    if (!have_header) {
      if (fields.size() == 3 && fields[0] == "id" && fields[1] == "name" && fields[2] == "pop") {
        have_seats = false;
      } else if (fields.size() == 4 && fields[0] == "id" && fields[1] == "name" && fields[2] == "pop" &&
                 fields[3] == "seats") {
        have_seats = true;
      } else {
        throw ParseError(lineno, 0, "expected header \"id,name,pop[,seats]\"");
      }
      have_header = true;
      continue;
    }
    const std::size_t want = have_seats ? 4 : 3;
    if (fields.size() != want) {
      throw ParseError(lineno, std::min(fields.size(), want) + (fields.size() > want ? 1 : 0),
                       "expected " + std::to_string(want) + " fields, found " + std::to_string(fields.size()));
    }
    PopulationRow row;
    if (!valid_id(fields[0])) throw ParseError(lineno, 1, "invalid id \"" + std::string(fields[0]) + "\"");
    row.id = std::string(fields[0]);
    if (fields[1].empty()) throw ParseError(lineno, 2, "empty name");
    row.name = std::string(fields[1]);
    auto pop = parse_int(fields[2]);
    if (!pop) throw ParseError(lineno, 3, "population \"" + std::string(fields[2]) + "\" is not an integer");
    if (*pop < 0) {
      throw ValidationError("line " + std::to_string(lineno) + ": row " + row.id + " has negative population " +
                            std::to_string(*pop));
    }
    row.pop = *pop;
    if (have_seats) {
      auto seats = parse_int(fields[3]);
      if (!seats) throw ParseError(lineno, 4, "seats \"" + std::string(fields[3]) + "\" is not an integer");
      if (*seats < 1) {
        throw ValidationError("line " + std::to_string(lineno) + ": row " + row.id + " has seat weight " +
                              std::to_string(*seats) + " below 1");
      }
      row.seats = *seats;
    }
    if (auto [it, fresh] = seen.emplace(row.id, lineno); !fresh) {
      throw ValidationError("line " + std::to_string(lineno) + ": duplicate id " + row.id + " (first on line " +
                            std::to_string(it->second) + ")");
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(all.size(), 0, "missing header \"id,name,pop[,seats]\"");
  if (table.rows.empty()) throw ValidationError("population table has no rows");
  return table;
}

inline std::string serialize_population_table(const PopulationTable& table) {
  const bool seats = std::any_of(table.rows.begin(), table.rows.end(), [](const auto& r) { return r.seats != 1; });
  std::ostringstream out;
  if (!table.unit.empty()) out << "# unit: " << table.unit << '\n';
  out << (seats ? "id,name,pop,seats\n" : "id,name,pop\n");
  for (const auto& r : table.rows) {
    out << r.id << ',' << r.name << ',' << r.pop;
    if (seats) out << ',' << r.seats;
    out << '\n';
  }
  return out.str();
}

namespace io_detail {

inline Fraction parse_fraction(std::string_view value, std::size_t lineno, const std::string& key) {
  auto parts = split(value, '/');
  if (parts.size() != 2) throw ParseError(lineno, 0, key + " must be written num/den");
  auto num = parse_int(trim(parts[0]));
  auto den = parse_int(trim(parts[1]));
  if (!num || !den) throw ParseError(lineno, 0, key + " must be written num/den with integers");
  Fraction f{*num, *den};
  try {
    f.validate(key.c_str());
  } catch (const InputError& e) {
    throw ParseError(lineno, 0, e.what());
  }
  return f;
}

inline void check_blocs(const ScenarioConfig& c) {
  std::unordered_set<std::string> members(c.members.begin(), c.members.end());
  std::unordered_map<std::string, std::string> owner;
  for (const auto& b : c.blocs) {
    if (b.members.empty()) throw ValidationError("bloc " + b.id + " has no members");
    for (const auto& m : b.members) {
      if (!members.count(m)) throw ValidationError("bloc " + b.id + " lists " + m + ", which is not a member");
      auto [it, fresh] = owner.emplace(m, b.id);
      if (!fresh) throw ValidationError("blocs " + it->second + " and " + b.id + " overlap on " + m);
    }
  }
}

}  // namespace io_detail

/// Parses and validates a scenario file on its own: grammar, duplicate
/// members, blocs drawn from the members and pairwise disjoint.
inline ScenarioConfig load_scenario_config(std::string_view text) {
  using namespace io_detail;
  ScenarioConfig c;
  std::map<std::string, std::size_t> seen;
  const auto all = lines(text);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const std::size_t lineno = k + 1;
    const std::string_view line = trim(all[k]);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, 0, "expected \"key = value\"");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, 0, "empty key");
    if (auto [it, fresh] = seen.emplace(key, lineno); !fresh) {
      throw ParseError(lineno, 0, "duplicate key " + key + " (first on line " + std::to_string(it->second) + ")");
    }

    if (key == "name") {
      c.name = std::string(value);
    } else if (key == "members") {
      c.members = words(value);
    } else if (key.rfind("bloc.", 0) == 0) {
      const std::string id = key.substr(5);
      if (!valid_id(id)) throw ParseError(lineno, 0, "invalid bloc name \"" + id + "\"");
      Bloc b{id, id, words(value)};
      std::unordered_set<std::string> uniq;
      for (const auto& m : b.members)
        if (!uniq.insert(m).second) throw ValidationError("bloc " + id + " lists " + m + " twice");
      c.blocs.push_back(std::move(b));
    } else if (key == "pop_fraction") {
      c.options.pop_fraction = parse_fraction(value, lineno, key);
    } else if (key == "seat_fraction") {
      c.options.seat_fraction = parse_fraction(value, lineno, key);
    } else if (key == "blocking_members") {
      auto v = parse_int(value);
      if (!v || *v < 1) throw ParseError(lineno, 0, "blocking_members must be a positive integer");
      c.options.blocking_members = *v;
    } else if (key == "include_blocking") {
      if (value == "true") {
        c.options.include_blocking = true;
      } else if (value == "false") {
        c.options.include_blocking = false;
      } else {
        throw ParseError(lineno, 0, "include_blocking must be true or false");
      }
    } else if (key == "rule") {
      if (value == "qmv") {
        c.rule = RuleKind::Qmv;
      } else if (value == "seats") {
        c.rule = RuleKind::Seats;
      } else if (value == "population") {
        c.rule = RuleKind::Population;
      } else {
        throw ParseError(lineno, 0, "rule must be qmv, seats or population");
      }
    } else {
      throw ParseError(lineno, 0, "unknown key " + key);
    }
  }
  if (!seen.count("name")) throw ValidationError("scenario has no name");
  if (c.members.empty()) throw ValidationError("scenario " + c.name + " lists no members");
  std::unordered_set<std::string> uniq;
  for (const auto& m : c.members)
    if (!uniq.insert(m).second) throw ValidationError("member " + m + " listed twice");
  check_blocs(c);
  return c;
}

/// As above, and every member must resolve against `table`.
inline ScenarioConfig load_scenario_config(std::string_view text, const PopulationTable& table) {
  ScenarioConfig c = load_scenario_config(text);
  for (const auto& m : c.members)
    if (!table.find(m)) throw ValidationError("unknown member id " + m);
  return c;
}

inline std::string serialize_scenario_config(const ScenarioConfig& c) {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  std::ostringstream out;
  out << "name = " << c.name << '\n';
  out << "members = " << join(c.members) << '\n';
  for (const auto& b : c.blocs) out << "bloc." << b.id << " = " << join(b.members) << '\n';
  out << "pop_fraction = " << c.options.pop_fraction.str() << '\n';
  out << "seat_fraction = " << c.options.seat_fraction.str() << '\n';
  out << "blocking_members = " << c.options.blocking_members << '\n';
  out << "include_blocking = " << (c.options.include_blocking ? "true" : "false") << '\n';
  out << "rule = " << to_string(c.rule) << '\n';
  return out.str();
}

/// Voters of `config` in member order, weights taken from `table`.
inline Roster roster_for(const ScenarioConfig& config, const PopulationTable& table) {
  std::vector<Voter> voters;
  voters.reserve(config.members.size());
  for (const auto& id : config.members) {
    const PopulationRow* row = table.find(id);
    if (!row) throw ValidationError("unknown member id " + id);
    voters.push_back({row->id, row->name, row->pop, row->seats});
  }
  return Roster(std::move(voters));
}

/// round(share x growth x base_total), half away from zero, in integers.
/// `share` is in hundredths of a percent of the grown total.
inline std::int64_t derive_weight(std::int64_t share, Fraction growth, std::int64_t base_total) {
  const __int128 num = static_cast<__int128>(share) * growth.num * base_total;
  const __int128 den = static_cast<__int128>(10000) * growth.den;
  return static_cast<std::int64_t>((2 * num + den) / (2 * den));
}

}  // namespace qmv
