#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ighastar/bench/records.hpp"
#include "ighastar/util/rng.hpp"

namespace ighastar {

/// One long-format summary statistic: `kind` selects the reduction family,
/// (a, b) name the rule(s), [lo, hi] is a bootstrap 95% interval and n the
/// number of per-query observations behind the value.
struct SummaryRow {
  std::string kind;
  std::string a;
  std::string b;
  std::string metric;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t n = 0;
};

inline constexpr const char* kSummaryHeader = "# ighastar summary v1";
inline constexpr const char* kSummaryColumns = "kind,a,b,metric,value,lo,hi,n";

namespace detail {

inline double median_of(std::vector<double> v) {
  IGH_CHECK(!v.empty(), "median of empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Percentile bootstrap over per-query observations. `statistic` maps a
/// resampled index multiset to a value, or nullopt when undefined for that
/// resample (e.g. a conditional mean whose condition never fired); undefined
/// resamples are dropped from the interval.
template <class F>
void bootstrap_ci(std::size_t n_items, F&& statistic, Rng& rng, int resamples,
                  double fallback, double* lo, double* hi) {
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(resamples));
  std::vector<std::size_t> idx(n_items);
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t i = 0; i < n_items; ++i)
      idx[i] = static_cast<std::size_t>(rng.next_below(n_items));
    if (const std::optional<double> s = statistic(idx)) stats.push_back(*s);
  }
  if (stats.empty()) {
    *lo = fallback;
    *hi = fallback;
    return;
  }
  std::sort(stats.begin(), stats.end());
  const auto at = [&](double p) {
    const std::size_t i = std::min(stats.size() - 1,
                                   static_cast<std::size_t>(p * static_cast<double>(stats.size())));
    return stats[i];
  };
  *lo = at(0.025);
  *hi = at(0.975);
}

struct PairObs {
  bool a_found = false;
  bool b_found = false;
  std::uint64_t a_first = 0;
  std::uint64_t b_first = 0;

  bool a_wins() const {
    if (a_found && !b_found) return true;
    return a_found && b_found && a_first < b_first;
  }
  bool tie() const {
    if (!a_found && !b_found) return true;
    return a_found && b_found && a_first == b_first;
  }
};

}  // namespace detail

/// Pure reduction of the per-run records: per-rule outcome rates, pairwise
/// first-path win/tie ratios and conditional speed-ups, and per-rule
/// termination ratios against the restart planner. Deterministic for a given
/// bootstrap seed, so the written summary is reproducible from the raw CSV.
inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records,
                                         const std::vector<std::string>& rules,
                                         std::uint64_t bootstrap_seed,
                                         int resamples = 10000) {
  std::map<std::string, std::map<std::uint32_t, const RunRecord*>> by_rule;
  for (const RunRecord& r : records) {
    IGH_CHECK(by_rule[r.rule].emplace(r.query, &r).second,
              "duplicate (query, rule) record in results");
  }
  for (const std::string& rule : rules)
    if (!by_rule.count(rule)) by_rule[rule];  // rule with zero rows still enumerable

  Rng rng(derive_seed(bootstrap_seed, 0x5157));
  std::vector<SummaryRow> rows;
  const auto push = [&rows](std::string kind, std::string a, std::string b, std::string metric,
                            double value, double lo, double hi, std::uint64_t n) {
    rows.push_back({std::move(kind), std::move(a), std::move(b), std::move(metric), value, lo,
                    hi, n});
  };

  for (const std::string& rule : rules) {
    const auto& runs = by_rule.at(rule);
    if (runs.empty()) continue;
    std::uint64_t found = 0;
    std::uint64_t optimal = 0;
    std::vector<double> first_exp;
    for (const auto& [q, rec] : runs) {
      if (rec->found()) {
        ++found;
        first_exp.push_back(static_cast<double>(rec->first_expansions()));
      }
      if (rec->status == Status::kOptimalTerminated) ++optimal;
    }
    const double total = static_cast<double>(runs.size());
    push("rule", rule, "", "found_ratio", static_cast<double>(found) / total, 0, 0, runs.size());
    rows.back().lo = rows.back().hi = rows.back().value;
    push("rule", rule, "", "optimal_ratio", static_cast<double>(optimal) / total, 0, 0,
         runs.size());
    rows.back().lo = rows.back().hi = rows.back().value;
    if (!first_exp.empty()) {
      const double med = detail::median_of(first_exp);
      double lo = med, hi = med;
      detail::bootstrap_ci(
          first_exp.size(),
          [&](const std::vector<std::size_t>& idx) -> std::optional<double> {
            std::vector<double> sample;
            sample.reserve(idx.size());
            for (std::size_t i : idx) sample.push_back(first_exp[i]);
            return detail::median_of(std::move(sample));
          },
          rng, resamples, med, &lo, &hi);
      push("rule", rule, "", "median_first_expansions", med, lo, hi, first_exp.size());
    }
  }

  for (const std::string& a : rules) {
    for (const std::string& b : rules) {
      if (a == b) continue;
      std::vector<detail::PairObs> obs;
      for (const auto& [q, ra] : by_rule.at(a)) {
        const auto itb = by_rule.at(b).find(q);
        if (itb == by_rule.at(b).end()) continue;
        detail::PairObs o;
        o.a_found = ra->found();
        o.b_found = itb->second->found();
        if (o.a_found) o.a_first = ra->first_expansions();
        if (o.b_found) o.b_first = itb->second->first_expansions();
        obs.push_back(o);
      }
      if (obs.empty()) continue;
      const double n = static_cast<double>(obs.size());

      std::uint64_t wins = 0;
      std::uint64_t ties = 0;
      for (const auto& o : obs) {
        wins += o.a_wins() ? 1 : 0;
        ties += o.tie() ? 1 : 0;
      }
      const double win_ratio = static_cast<double>(wins) / n;
      double lo = win_ratio, hi = win_ratio;
      detail::bootstrap_ci(
          obs.size(),
          [&](const std::vector<std::size_t>& idx) -> std::optional<double> {
            std::uint64_t w = 0;
            for (std::size_t i : idx) w += obs[i].a_wins() ? 1 : 0;
            return static_cast<double>(w) / static_cast<double>(idx.size());
          },
          rng, resamples, win_ratio, &lo, &hi);
      push("pair", a, b, "win_ratio", win_ratio, lo, hi, obs.size());
      const double tie_ratio = static_cast<double>(ties) / n;
      push("pair", a, b, "tie_ratio", tie_ratio, tie_ratio, tie_ratio, obs.size());

      // Conditional speed-up: mean first-path expansion ratio b/a over the
      // queries a wins with both planners succeeding (infinite ratios from
      // unsolved b runs are excluded).
      std::vector<double> ratios;
      for (const auto& o : obs)
        if (o.a_wins() && o.b_found)
          ratios.push_back(static_cast<double>(o.b_first) / static_cast<double>(o.a_first));
      if (!ratios.empty()) {
        double mean = 0.0;
        for (double r : ratios) mean += r;
        mean /= static_cast<double>(ratios.size());
        double slo = mean, shi = mean;
        detail::bootstrap_ci(
            obs.size(),
            [&](const std::vector<std::size_t>& idx) -> std::optional<double> {
              double sum = 0.0;
              std::uint64_t k = 0;
              for (std::size_t i : idx) {
                const auto& o = obs[i];
                if (o.a_wins() && o.b_found) {
                  sum += static_cast<double>(o.b_first) / static_cast<double>(o.a_first);
                  ++k;
                }
              }
              if (k == 0) return std::nullopt;
              return sum / static_cast<double>(k);
            },
            rng, resamples, mean, &slo, &shi);
        push("pair", a, b, "cond_speedup", mean, slo, shi, ratios.size());
      }
    }
  }

  // Termination ratio against the restart planner, over queries the restart
  // planner finished within budget.
  const auto iha = by_rule.find("iha-star");
  if (iha != by_rule.end() && !iha->second.empty()) {
    for (const std::string& rule : rules) {
      if (rule == "iha-star") continue;
      std::vector<double> ratios;
      for (const auto& [q, ihar] : iha->second) {
        if (ihar->status != Status::kOptimalTerminated) continue;
        const auto itr = by_rule.at(rule).find(q);
        if (itr == by_rule.at(rule).end()) continue;
        if (itr->second->total_expansions == 0) continue;
        ratios.push_back(static_cast<double>(ihar->total_expansions) /
                         static_cast<double>(itr->second->total_expansions));
      }
      if (ratios.empty()) continue;
      const double med = detail::median_of(ratios);
      double lo = med, hi = med;
      detail::bootstrap_ci(
          ratios.size(),
          [&](const std::vector<std::size_t>& idx) -> std::optional<double> {
            std::vector<double> sample;
            sample.reserve(idx.size());
            for (std::size_t i : idx) sample.push_back(ratios[i]);
            return detail::median_of(std::move(sample));
          },
          rng, resamples, med, &lo, &hi);
      push("vs_iha", rule, "iha-star", "termination_ratio_median", med, lo, hi, ratios.size());
    }
  }

  return rows;
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << kSummaryHeader << '\n' << kSummaryColumns << '\n';
  for (const SummaryRow& r : rows)
    os << r.kind << ',' << r.a << ',' << r.b << ',' << r.metric << ',' << fmt_double(r.value)
       << ',' << fmt_double(r.lo) << ',' << fmt_double(r.hi) << ',' << r.n << '\n';
}

/// Convenience for tests and the acceptance harness.
inline const SummaryRow* find_row(const std::vector<SummaryRow>& rows, const std::string& kind,
                                  const std::string& a, const std::string& b,
                                  const std::string& metric) {
  for (const SummaryRow& r : rows)
    if (r.kind == kind && r.a == a && r.b == b && r.metric == metric) return &r;
  return nullptr;
}

}  // namespace ighastar
