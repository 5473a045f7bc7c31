#pragma once

#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "ighastar/core/types.hpp"
#include "ighastar/util/check.hpp"
#include "ighastar/util/text.hpp"

namespace ighastar {

/// One (query, rule) benchmark outcome. The emission log is the primary
/// record; first/best columns in the CSV are derived from it.
struct RunRecord {
  std::uint32_t query = 0;
  std::string rule;
  Status status = Status::kFailure;
  std::vector<Emission> emissions;
  std::uint64_t total_expansions = 0;
  std::uint32_t iterations = 0;
  std::uint32_t stall_passes = 0;
  std::string note;  // exception text when the run aborted

  bool found() const { return !emissions.empty(); }
  double first_cost() const { return emissions.front().cost; }
  std::uint64_t first_expansions() const { return emissions.front().expansions; }
  double best_cost() const { return emissions.back().cost; }
  std::uint64_t best_expansions() const { return emissions.back().expansions; }
};

inline constexpr const char* kResultsHeader = "# ighastar results v1";
inline constexpr const char* kResultsColumns =
    "query,rule,status,first_cost,first_expansions,best_cost,best_expansions,"
    "total_expansions,iterations,stall_passes,emissions,note";

namespace detail {

// The CSV stays quote-free: separators inside free text become spaces.
inline std::string sanitize_note(std::string s) {
  for (char& c : s)
    if (c == ',' || c == ';' || c == '\n' || c == '\r') c = ' ';
  return s;
}

inline std::string encode_emissions(const std::vector<Emission>& emissions) {
  std::string out;
  for (const Emission& e : emissions) {
    if (!out.empty()) out += ';';
    out += fmt_double(e.cost) + "@" + std::to_string(e.expansions) + "@" +
           std::to_string(e.iteration);
  }
  return out;
}

inline Status parse_status(const std::string& s, const std::string& where) {
  if (s == "optimal-terminated") return Status::kOptimalTerminated;
  if (s == "budget") return Status::kBudget;
  if (s == "failure") return Status::kFailure;
  throw parse_error(where + ": unknown status `" + s + "`");
}

inline double parse_double_field(const std::string& s, const std::string& where) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw parse_error(where + ": bad number `" + s + "`");
  return v;
}

inline std::uint64_t parse_u64_field(const std::string& s, const std::string& where) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0' || s.front() == '-')
    throw parse_error(where + ": bad count `" + s + "`");
  return v;
}

}  // namespace detail

inline void write_results_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kResultsHeader << '\n' << kResultsColumns << '\n';
  for (const RunRecord& r : records) {
    IGH_CHECK(!r.rule.empty(), "record without a rule id");
    os << r.query << ',' << r.rule << ',' << to_string(r.status) << ',';
    if (r.found())
      os << fmt_double(r.first_cost()) << ',' << r.first_expansions() << ','
         << fmt_double(r.best_cost()) << ',' << r.best_expansions() << ',';
    else
      os << ",,,,";
    os << r.total_expansions << ',' << r.iterations << ',' << r.stall_passes << ','
       << detail::encode_emissions(r.emissions) << ',' << detail::sanitize_note(r.note)
       << '\n';
  }
}

inline std::vector<RunRecord> read_results_csv(const std::string& text,
                                               const std::string& source) {
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2 || lines[0] != kResultsHeader || lines[1] != kResultsColumns)
    throw parse_error(source + ": not a results CSV (bad header)");

  std::vector<RunRecord> records;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const std::string where = source + ":" + std::to_string(i + 1);
    const std::vector<std::string> f = split(lines[i], ',');
    if (f.size() != 12) throw parse_error(where + ": expected 12 fields, got " +
                                          std::to_string(f.size()));
    RunRecord r;
    r.query = static_cast<std::uint32_t>(detail::parse_u64_field(f[0], where));
    r.rule = f[1];
    if (r.rule.empty()) throw parse_error(where + ": empty rule id");
    r.status = detail::parse_status(f[2], where);
    r.total_expansions = detail::parse_u64_field(f[7], where);
    r.iterations = static_cast<std::uint32_t>(detail::parse_u64_field(f[8], where));
    r.stall_passes = static_cast<std::uint32_t>(detail::parse_u64_field(f[9], where));
    if (!f[10].empty()) {
      for (const std::string& triple : split(f[10], ';')) {
        const std::vector<std::string> parts = split(triple, '@');
        if (parts.size() != 3) throw parse_error(where + ": bad emission `" + triple + "`");
        Emission e;
        e.cost = detail::parse_double_field(parts[0], where);
        e.expansions = detail::parse_u64_field(parts[1], where);
        e.iteration = static_cast<std::uint32_t>(detail::parse_u64_field(parts[2], where));
        r.emissions.push_back(e);
      }
    }
    r.note = f[11];

    // The derived columns must agree with the emission log they came from.
    if (r.found()) {
      if (f[3].empty() || f[4].empty() || f[5].empty() || f[6].empty())
        throw parse_error(where + ": found run with blank first/best columns");
      if (detail::parse_double_field(f[3], where) != r.first_cost() ||
          detail::parse_u64_field(f[4], where) != r.first_expansions() ||
          detail::parse_double_field(f[5], where) != r.best_cost() ||
          detail::parse_u64_field(f[6], where) != r.best_expansions())
        throw parse_error(where + ": first/best columns disagree with the emission log");
    } else if (!f[3].empty() || !f[4].empty() || !f[5].empty() || !f[6].empty()) {
      throw parse_error(where + ": pathless run with nonblank first/best columns");
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace ighastar
