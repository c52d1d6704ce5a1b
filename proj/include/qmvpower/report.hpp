#pragma once

// Text, CSV and JSON renderings of power results, diff reports and coalition
// comparisons. Percentages are rounded half-even from the exact rationals;
// JSON additionally carries every rational as numerator/denominator strings.

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qmvpower/errors.hpp"
#include "qmvpower/exact.hpp"
#include "qmvpower/power.hpp"
#include "qmvpower/scenarios.hpp"

namespace qmv {

enum class Format { Text, Csv, Json };

inline Format parse_format(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw InputError("unknown format " + std::string(s));
}

inline Family parse_index(std::string_view s) {
  if (s == "banzhaf") return Family::Banzhaf;
  if (s == "ss") return Family::Shapley;
  if (s == "both") return Family::Both;
  throw InputError("unknown index " + std::string(s));
}

struct RenderOptions {
  Format format = Format::Text;
  int decimals = 2;
  Family index = Family::Both;
  /// When non-empty, only these voter ids are rendered (population shares
  /// stay relative to the full roster).
  std::vector<std::string> only;
};

namespace report_detail {

using json = nlohmann::json;

inline json exact(const Rational& r) {
  return json{{"num", numerator_of(r).str()}, {"den", denominator_of(r).str()}};
}

/// Fixed-width table; first column left aligned, numeric columns right aligned.
class TextTable {
public:
  explicit TextTable(std::vector<std::string> header, std::vector<bool> left)
      : left_(std::move(left)) {
    rows_.push_back(std::move(header));
  }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::ostringstream out;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        const std::string pad(width[c] - r[c].size(), ' ');
        if (c) line += "  ";
        line += left_[c] ? r[c] + pad : pad + r[c];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
    }
    return out.str();
  }

private:
  std::vector<bool> left_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t k = 0; k < fields.size(); ++k) line += (k ? "," : "") + csv_field(fields[k]);
  return line + "\n";
}

inline std::string signed_percent(const Rational& r, int decimals) {
  std::string s = format_percent(r, decimals);
  if (s.front() != '-' && r > 0 && s.find_first_not_of("0.") != std::string::npos) s = "+" + s;
  return s;
}

/// Indices into `voters`, by descending key, ties in roster order.
template <class Key>
std::vector<std::size_t> ranked(std::size_t count, Key key) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
  return order;
}

inline bool selected(const RenderOptions& o, const std::string& id) {
  return o.only.empty() || std::find(o.only.begin(), o.only.end(), id) != o.only.end();
}

}  // namespace report_detail

/// One row per voter, sorted by descending Banzhaf index (Shapley-Shubik when
/// only that family is shown), ties in roster order.
inline std::string render(const PowerResult& result, const RenderOptions& opt = {}) {
  using namespace report_detail;
  if (opt.decimals < 0 || opt.decimals > 10) throw InputError("decimals must be in 0..10");
  const bool show_b = result.has_banzhaf && has(opt.index, Family::Banzhaf);
  const bool show_s = result.has_shapley && has(opt.index, Family::Shapley);
  const bool by_banzhaf = show_b || !show_s;
  const auto order = ranked(result.voters.size(), [&](std::size_t k) {
    return by_banzhaf ? result.voters[k].banzhaf_index : result.voters[k].shapley_shubik;
  });

  std::int64_t total_pop = 0;
  for (const auto& v : result.voters) total_pop += v.voter.pop_weight;
  auto pop_share = [&](const Voter& v) -> std::optional<Rational> {
    if (total_pop <= 0) return std::nullopt;
    return Rational(v.pop_weight) / Rational(total_pop);
  };

  if (opt.format == Format::Json) {
    json voters = json::array();
    std::size_t rank = 0;
    for (std::size_t k : order) {
      ++rank;
      const VoterPower& vp = result.voters[k];
      if (!selected(opt, vp.voter.id)) continue;
      json j{{"rank", rank},
             {"id", vp.voter.id},
             {"name", vp.voter.name},
             {"pop_weight", vp.voter.pop_weight},
             {"seat_weight", vp.voter.seat_weight}};
      if (auto s = pop_share(vp.voter)) j["population_pct"] = format_percent(*s, opt.decimals);
      if (show_b) {
        j["banzhaf_score"] = vp.banzhaf_score.str();
        j["banzhaf_value"] = exact(vp.banzhaf_value);
        j["banzhaf_index"] = exact(vp.banzhaf_index);
        j["banzhaf_pct"] = format_percent(vp.banzhaf_index, opt.decimals);
      }
      if (show_s) {
        j["shapley_shubik"] = exact(vp.shapley_shubik);
        j["shapley_pct"] = format_percent(vp.shapley_shubik, opt.decimals);
      }
      voters.push_back(std::move(j));
    }
    json rules = json::array();
    for (const auto& r : result.rules) rules.push_back({{"kind", to_string(r.kind)}, {"quota", r.quota}});
    json doc{{"n", result.n},
             {"rule", result.rule_text},
             {"rules", rules},
             {"include_blocking", result.include_blocking},
             {"decimals", opt.decimals},
             {"voters", voters}};
    return doc.dump(2) + "\n";
  }

  std::vector<std::string> header{"rank", "id", "name", "population"};
  if (show_b) header.emplace_back("banzhaf");
  if (show_s) header.emplace_back(opt.format == Format::Csv ? "shapley_shubik" : "shapley");
  std::vector<std::vector<std::string>> rows;
  std::size_t rank = 0;
  for (std::size_t k : order) {
    ++rank;
    const VoterPower& vp = result.voters[k];
    if (!selected(opt, vp.voter.id)) continue;
    auto share = pop_share(vp.voter);
    std::vector<std::string> row{std::to_string(rank), vp.voter.id, vp.voter.name,
                                 share ? format_percent(*share, opt.decimals) : std::string("-")};
    if (show_b) row.push_back(format_percent(vp.banzhaf_index, opt.decimals));
    if (show_s) row.push_back(format_percent(vp.shapley_shubik, opt.decimals));
    rows.push_back(std::move(row));
  }

  if (opt.format == Format::Csv) {
    std::string out = csv_line(header);
    for (const auto& r : rows) out += csv_line(r);
    return out;
  }
  TextTable table(header, {false, true, true, false, false, false});
  for (auto& r : rows) table.add(std::move(r));
  return "# n = " + std::to_string(result.n) + ", rule " + result.rule_text +
         ", blocking minority " + (result.include_blocking ? "on" : "off") + "\n" + table.str();
}

/// Incumbent changes, sorted by descending base Banzhaf index. Before/after in
/// percent, pp in percentage points, rel in percent of the base value.
inline std::string render(const DiffReport& report, const RenderOptions& opt = {}) {
  using namespace report_detail;
  if (opt.decimals < 0 || opt.decimals > 10) throw InputError("decimals must be in 0..10");
  const bool show_b = report.has_banzhaf && has(opt.index, Family::Banzhaf);
  const bool show_s = report.has_shapley && has(opt.index, Family::Shapley);
  const bool by_banzhaf = show_b || !show_s;
  const auto order = ranked(report.incumbents.size(), [&](std::size_t k) {
    return by_banzhaf ? report.incumbents[k].banzhaf.before : report.incumbents[k].shapley.before;
  });

  if (opt.format == Format::Json) {
    auto fam = [&](const FamilyDiff& d) {
      json j{{"before", exact(d.before)},
             {"after", exact(d.after)},
             {"pp", exact(d.pp)},
             {"before_pct", format_percent(d.before, opt.decimals)},
             {"after_pct", format_percent(d.after, opt.decimals)},
             {"pp_pct", format_percent(d.pp, opt.decimals)}};
      j["rel"] = d.rel ? exact(*d.rel) : json(nullptr);
      j["rel_pct"] = d.rel ? json(format_percent(*d.rel, opt.decimals)) : json(nullptr);
      return j;
    };
    json inc = json::array();
    for (std::size_t k : order) {
      const auto& e = report.incumbents[k];
      if (!selected(opt, e.id)) continue;
      json j{{"id", e.id}, {"name", e.name}};
      if (show_b) j["banzhaf"] = fam(e.banzhaf);
      if (show_s) j["shapley_shubik"] = fam(e.shapley);
      inc.push_back(std::move(j));
    }
    auto ids = [](const std::vector<Voter>& vs) {
      json a = json::array();
      for (const auto& v : vs) a.push_back({{"id", v.id}, {"name", v.name}});
      return a;
    };
    return json{{"decimals", opt.decimals},
                {"incumbents", inc},
                {"entrants", ids(report.entrants)},
                {"departed", ids(report.departed)}}
               .dump(2) +
           "\n";
  }

  std::vector<std::string> header{"id", "name"};
  for (auto [show, prefix] : {std::pair{show_b, "banzhaf"}, std::pair{show_s, "shapley"}}) {
    if (!show) continue;
    for (const char* col : {"_before", "_after", "_pp", "_rel"}) header.push_back(std::string(prefix) + col);
  }
  std::vector<std::vector<std::string>> rows;
  auto cells = [&](std::vector<std::string>& row, const FamilyDiff& d) {
    row.push_back(format_percent(d.before, opt.decimals));
    row.push_back(format_percent(d.after, opt.decimals));
    row.push_back(signed_percent(d.pp, opt.decimals));
    row.push_back(d.rel ? signed_percent(*d.rel, opt.decimals) : std::string(opt.format == Format::Csv ? "" : "-"));
  };
  for (std::size_t k : order) {
    const auto& e = report.incumbents[k];
    if (!selected(opt, e.id)) continue;
    std::vector<std::string> row{e.id, e.name};
    if (show_b) cells(row, e.banzhaf);
    if (show_s) cells(row, e.shapley);
    rows.push_back(std::move(row));
  }

  if (opt.format == Format::Csv) {
    std::string out = csv_line(header);
    for (const auto& r : rows) out += csv_line(r);
    return out;
  }
  std::vector<bool> left(header.size(), false);
  left[0] = left[1] = true;
  TextTable table(header, left);
  for (auto& r : rows) table.add(std::move(r));
  const std::string out = table.str();
  auto list = [](const char* label, const std::vector<Voter>& vs) {
    if (vs.empty()) return std::string();
    std::string s = std::string("# ") + label + ":";
    for (const auto& v : vs) s += " " + v.id;
    return s + "\n";
  };
  return out + list("entrants", report.entrants) + list("departed", report.departed);
}

inline std::string render(const ParadoxReport& report, const RenderOptions& opt = {}) {
  using namespace report_detail;
  auto family = [](Family f) { return f == Family::Banzhaf ? "banzhaf" : "shapley"; };
  if (opt.format == Format::Json) {
    json g = json::array();
    for (const auto& x : report.gainers)
      g.push_back({{"id", x.id},
                   {"name", x.name},
                   {"family", family(x.family)},
                   {"pp", exact(x.pp)},
                   {"pp_pct", format_percent(x.pp, opt.decimals)}});
    return json{{"note", report.note}, {"gainers", g}}.dump(2) + "\n";
  }
  if (opt.format == Format::Csv) {
    std::string out = csv_line({"family", "id", "name", "pp"});
    for (const auto& x : report.gainers)
      out += csv_line({family(x.family), x.id, x.name, signed_percent(x.pp, opt.decimals)});
    return out;
  }
  std::string out = "# " + report.note + "\n";
  TextTable table({"family", "id", "name", "pp"}, {true, true, true, false});
  for (const auto& x : report.gainers) table.add({family(x.family), x.id, x.name, signed_percent(x.pp, opt.decimals)});
  return out + (report.gainers.empty() ? std::string() : table.str());
}

}  // namespace qmv
