#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ighastar/core/types.hpp"
#include "ighastar/util/check.hpp"

namespace ighastar {

/// Per-level map from grid cell to the dominant vertex id in that cell.
/// Dominance is approximate duplicate detection: within a cell only the
/// cheapest vertex may stay active at that level.
class DominanceTable {
 public:
  struct Outcome {
    bool became_dominant = false;
    VertexId displaced = kNoVertex;  // previous dominant, if one lost the cell
  };

  explicit DominanceTable(int level_count)
      : maps_(static_cast<std::size_t>(level_count)) {}

  int level_count() const { return static_cast<int>(maps_.size()); }

  /// Strict-inequality dominance: the candidate takes the cell only when its
  /// g is strictly below the incumbent's; ties keep the incumbent.
  template <class GOf>
  Outcome try_dominate(int level, std::uint64_t key, VertexId candidate, double g,
                       GOf&& g_of) {
    auto& m = map(level);
    auto [it, inserted] = m.try_emplace(key, candidate);
    if (inserted) return {true, kNoVertex};
    const VertexId incumbent = it->second;
    if (g < g_of(incumbent)) {
      it->second = candidate;
      return {true, incumbent};
    }
    return {false, kNoVertex};
  }

  /// Dominant vertex of a cell, or kNoVertex when the cell is empty.
  VertexId dominant(int level, std::uint64_t key) const {
    const auto& m = map(level);
    auto it = m.find(key);
    return it == m.end() ? kNoVertex : it->second;
  }

  /// Drops the entry for a cell if it currently points at `id`.
  void erase_if_dominant(int level, std::uint64_t key, VertexId id) {
    auto& m = map(level);
    auto it = m.find(key);
    if (it != m.end() && it->second == id) m.erase(it);
  }

  /// Visits every (cell key, dominant id) pair at one level, in no
  /// particular order.
  template <class F>
  void for_each_dominant(int level, F&& f) const {
    for (const auto& [key, id] : map(level)) f(key, id);
  }

  void clear() {
    for (auto& m : maps_) m.clear();
  }

  std::size_t size(int level) const { return map(level).size(); }

 private:
  std::unordered_map<std::uint64_t, VertexId>& map(int level) {
    IGH_CHECK(level >= 0 && level < level_count(), "dominance level out of range");
    return maps_[static_cast<std::size_t>(level)];
  }
  const std::unordered_map<std::uint64_t, VertexId>& map(int level) const {
    IGH_CHECK(level >= 0 && level < level_count(), "dominance level out of range");
    return maps_[static_cast<std::size_t>(level)];
  }

  std::vector<std::unordered_map<std::uint64_t, VertexId>> maps_;
};

}  // namespace ighastar
