#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ighastar/bench/records.hpp"

namespace ighastar {

/// rules x ranks percentage matrix: percent[i][k] is how often rule i reached
/// first-path rank k+1 across the usable queries. Ties share the better rank
/// (competition ranking), unsolved queries rank behind every solved one.
struct RankMatrix {
  std::vector<std::string> rules;
  std::vector<std::vector<double>> percent;
  std::uint64_t used_queries = 0;
  std::uint64_t skipped_queries = 0;  // queries missing at least one rule's row
};

inline RankMatrix rank_matrix(const std::vector<RunRecord>& records,
                              const std::vector<std::string>& rules) {
  IGH_CHECK(!rules.empty(), "rank matrix needs at least one rule");
  std::map<std::uint32_t, std::map<std::string, const RunRecord*>> by_query;
  for (const RunRecord& r : records) {
    if (std::find(rules.begin(), rules.end(), r.rule) == rules.end()) continue;
    IGH_CHECK(by_query[r.query].emplace(r.rule, &r).second,
              "duplicate (query, rule) record in results");
  }

  const std::size_t n = rules.size();
  RankMatrix m;
  m.rules = rules;
  m.percent.assign(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<std::uint64_t>> counts(n, std::vector<std::uint64_t>(n, 0));

  constexpr double kUnsolved = std::numeric_limits<double>::infinity();
  for (const auto& [query, runs] : by_query) {
    if (runs.size() != n) {
      ++m.skipped_queries;
      continue;
    }
    std::vector<double> first(n, kUnsolved);
    for (std::size_t i = 0; i < n; ++i) {
      const RunRecord* rec = runs.at(rules[i]);
      if (rec->found()) first[i] = static_cast<double>(rec->first_expansions());
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t rank = 0;  // 0-based: number of rules strictly better
      for (std::size_t j = 0; j < n; ++j)
        if (first[j] < first[i]) ++rank;
      ++counts[i][rank];
    }
    ++m.used_queries;
  }

  if (m.used_queries > 0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        m.percent[i][k] =
            100.0 * static_cast<double>(counts[i][k]) / static_cast<double>(m.used_queries);
  return m;
}

inline constexpr const char* kRankHeader = "# ighastar rankplot v1";

inline void write_rank_csv(std::ostream& os, const RankMatrix& m) {
  os << kRankHeader << '\n';
  os << "rule";
  for (std::size_t k = 0; k < m.rules.size(); ++k) os << ",rank" << (k + 1);
  os << '\n';
  for (std::size_t i = 0; i < m.rules.size(); ++i) {
    os << m.rules[i];
    for (std::size_t k = 0; k < m.rules.size(); ++k) os << ',' << fmt_double(m.percent[i][k]);
    os << '\n';
  }
}

}  // namespace ighastar
