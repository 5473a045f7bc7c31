#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "ighastar/core/dominance.hpp"
#include "ighastar/core/resolution.hpp"
#include "ighastar/core/types.hpp"
#include "ighastar/util/check.hpp"

namespace ighastar {

/// Shared state of the incremental planner: the vertex arena, the active
/// priority queue, the unordered inactive remainder of Q_v, and the per-level
/// dominance tables.
///
/// Only the active set is kept as a queue; inactive open vertices live in the
/// arena with flags. A vertex is in Q_v iff alive && open; it is in Q_v.Active
/// iff additionally active. The heap holds at most one (f, id) entry per
/// vertex and is cleaned lazily, which is safe because f never changes.
template <PlanningDomain D>
class SearchState {
 public:
  using State = typename D::State;
  static constexpr std::size_t kDims = D::kKeyDims;

  SearchState(const D& domain, const ResolutionSchedule<kDims>& schedule)
      : domain_(&domain),
        schedule_(&schedule),
        tables_(schedule.level_count()) {}

  // --- queue and arena ----------------------------------------------------

  const Vertex<State>& vertex(VertexId id) const { return arena_[id]; }
  std::size_t arena_size() const { return arena_.size(); }
  std::size_t open_count() const { return open_count_; }
  bool open_nonempty() const { return open_count_ > 0; }

  int level() const { return level_; }
  int next_level() const { return next_level_; }
  int finest_level() const { return schedule_->finest_level(); }
  void set_next_level(int l) {
    IGH_CHECK(l >= 0 && l <= finest_level(), "next level out of schedule range");
    next_level_ = l;
  }

  VertexId insert_root(const State& s) {
    root_state_ = s;
    has_root_ = true;
    return insert(s, 0.0, kNoVertex, -1);
  }

  /// Smallest-(f, id) vertex of Q_v.Active, or kNoVertex when empty.
  VertexId peek_active() {
    while (!heap_.empty()) {
      const HeapEntry top = heap_.top();
      Vertex<State>& v = arena_[top.id];
      if (v.alive && v.open && v.active) return top.id;
      heap_.pop();
      v.in_heap = false;
    }
    return kNoVertex;
  }

  /// Pops the current head. Must follow a successful peek_active().
  VertexId pop_active() {
    const VertexId id = peek_active();
    IGH_CHECK(id != kNoVertex, "pop from empty active queue");
    heap_.pop();
    Vertex<State>& u = arena_[id];
    // A popped vertex must be the dominant occupant of its cell at the
    // current level; anything else means the active flags drifted.
    IGH_CHECK(tables_.dominant(level_, key_at(id, level_)) == id,
              "active vertex is not dominant in its cell");
    u.in_heap = false;
    u.open = false;
    u.active = false;
    --open_count_;
    return id;
  }

  // --- expansion ----------------------------------------------------------

  /// Generates the successors of u and inserts every valid one. Successors
  /// that win the dominance check at the current level become active and
  /// deactivate the vertex they displaced; losers are inserted inactive.
  /// Returns the number of inserted children.
  std::size_t expand(VertexId u_id) {
    scratch_.clear();
    const Vertex<State> u = arena_[u_id];  // copy: arena may reallocate below
    domain_->successors(u.state, scratch_);
    for (const auto& succ : scratch_) {
      IGH_CHECK(succ.cost >= domain_->min_edge_cost(),
                "edge cost below the configured floor");
      insert(succ.state, u.g + succ.cost, u_id, succ.primitive);
    }
    return scratch_.size();
  }

  // --- Bound and Project --------------------------------------------------

  /// Removes every retained vertex with f strictly above the incumbent cost
  /// from the arena, the queues and the dominance tables. Returns how many
  /// were removed. Ancestors of surviving vertices always survive themselves
  /// because f is nondecreasing along tree paths under a consistent h.
  std::size_t bound(double incumbent_cost) {
    std::size_t removed = 0;
    for (VertexId id = 0; id < arena_.size(); ++id) {
      Vertex<State>& v = arena_[id];
      if (!v.alive || v.f <= incumbent_cost) continue;
      for (int l = 0; l < tables_.level_count(); ++l)
        tables_.erase_if_dominant(l, key_at(id, l), id);
      v.alive = false;
      if (v.open) --open_count_;
      v.open = false;
      v.active = false;
      v.dom_level = kNoDomLevel;
      mark_removed(id);
      ++removed;
    }
    removals_since_rebuild_ += removed;
    return removed;
  }

  /// Switches to `new_level` and recomputes the dominance tables and every
  /// dom_level from the retained vertices. The rebuild scans ids in ascending
  /// order with strict-inequality takeover, so cell ties resolve to the
  /// smaller g and then the smaller id, deterministically.
  ///
  /// While no vertex has been removed the incremental updates performed at
  /// insertion time already equal the rebuilt result, so the rebuild is
  /// skipped; after removals it restores runner-up vertices to their cells.
  void project(int new_level) {
    IGH_CHECK(new_level >= 0 && new_level <= finest_level(), "project level out of range");
    level_ = new_level;
    next_level_ = new_level;
    if (removals_since_rebuild_ == 0) return;
    tables_.clear();
    for (VertexId id = 0; id < arena_.size(); ++id) {
      Vertex<State>& v = arena_[id];
      v.dom_level = kNoDomLevel;
      if (!v.alive) continue;
      for (int l = 0; l < tables_.level_count(); ++l)
        tables_.try_dominate(l, key_at(id, l), id, v.g,
                             [this](VertexId w) { return arena_[w].g; });
    }
    // dom_level = coarsest dominated level: sweep tables coarsest→finest and
    // keep the first hit per vertex. Same result as per-vertex lookups.
    for (int l = 0; l < tables_.level_count(); ++l)
      tables_.for_each_dominant(l, [&](std::uint64_t, VertexId id) {
        Vertex<State>& v = arena_[id];
        if (v.dom_level == kNoDomLevel) v.dom_level = static_cast<std::int8_t>(l);
      });
    removals_since_rebuild_ = 0;
  }

  // --- activation (used by the SHIFT/ACTIVATE rules) -----------------------

  struct ActivationStats {
    std::uint32_t activated = 0;
    std::uint32_t open_count = 0;
  };

  /// Marks exactly the open vertices that dominate their cell at the current
  /// level as active; every other open vertex becomes inactive. Scans the
  /// level's cell table rather than the arena: a vertex dominates at most its
  /// own cell, so the dominant set is exactly the table's image.
  ActivationStats activate_dominant_open() {
    ActivationStats st;
    st.open_count = static_cast<std::uint32_t>(open_count_);
    for (const VertexId id : active_ids_) arena_[id].active = false;
    active_ids_.clear();
    tables_.for_each_dominant(level_, [&](std::uint64_t, VertexId id) {
      Vertex<State>& v = arena_[id];
      if (!v.alive || !v.open) return;
      v.active = true;
      active_ids_.push_back(id);
      ++st.activated;
      push_heap_entry(id);
    });
    return st;
  }

  /// True when some open vertex dominates its cell at the current level.
  /// Used to distinguish a rule that refuses to activate available work from
  /// the legitimate endgame where nothing is activatable.
  bool any_open_dominant() const {
    bool found = false;
    tables_.for_each_dominant(level_, [&](std::uint64_t, VertexId id) {
      const Vertex<State>& v = arena_[id];
      found = found || (v.alive && v.open);
    });
    return found;
  }

  /// Discards the whole tree and restarts Q_v from a fresh copy of the root.
  void reset_to_root() {
    IGH_CHECK(has_root_, "reset before a root was inserted");
    discard_all();
    insert(root_state_, 0.0, kNoVertex, -1);
  }

  /// Discards the whole tree, leaving Q_v empty.
  void clear_all() { discard_all(); }

  // --- path extraction ----------------------------------------------------

  Path<State> emit_path(VertexId goal) const {
    Path<State> path;
    const double cost = arena_[goal].g;
    for (VertexId id = goal; id != kNoVertex; id = arena_[id].parent) {
      const Vertex<State>& v = arena_[id];
      IGH_CHECK(v.alive, "path ancestor was removed");
      // Equivalent to h(v) <= cost-to-go along this path (admissibility on
      // the emitted path) and implies Bound can never cut the chain.
      IGH_CHECK(v.f <= cost + 1e-9, "ancestor f above the path cost");
      path.states.push_back(v.state);
      if (v.primitive >= 0) path.primitives.push_back(v.primitive);
    }
    std::reverse(path.states.begin(), path.states.end());
    std::reverse(path.primitives.begin(), path.primitives.end());
    path.cost = cost;
    return path;
  }

  // --- tracing ------------------------------------------------------------

  void attach_trace(std::vector<TraceNode>* trace) { trace_ = trace; }

  /// Records the fate of every still-alive vertex into the trace.
  void finalize_trace() {
    if (!trace_) return;
    for (VertexId id = 0; id < arena_.size(); ++id) {
      const Vertex<State>& v = arena_[id];
      if (!v.alive) continue;
      (*trace_)[trace_idx_[id]].fate =
          (v.open && !v.active) ? VertexFate::kInactive : VertexFate::kActive;
    }
  }

  std::uint64_t inserted_total() const { return inserted_total_; }
  std::size_t peak_open() const { return peak_open_; }
  const DominanceTable& tables() const { return tables_; }

  std::uint64_t key_of(const State& s, int level) const {
    return cell_key(domain_->key_coords(s), schedule_->cells(level));
  }

 private:
  struct HeapEntry {
    double f;
    VertexId id;
    friend bool operator>(const HeapEntry& a, const HeapEntry& b) {
      if (a.f != b.f) return a.f > b.f;
      return a.id > b.id;
    }
  };

  VertexId insert(const State& s, double g, VertexId parent, std::int16_t primitive) {
    const VertexId id = static_cast<VertexId>(arena_.size());
    IGH_CHECK(arena_.size() < kNoVertex, "vertex arena exhausted");
    Vertex<State> v;
    v.state = s;
    v.g = g;
    const double h = domain_->heuristic(s);
    v.f = g + h;
    v.parent = parent;
    v.primitive = primitive;
    if (parent != kNoVertex) {
      // Consistency of h across the new edge; catches broken domain math.
      const Vertex<State>& p = arena_[parent];
      IGH_CHECK(p.f - p.g <= (g - p.g) + h + 1e-9, "heuristic is not consistent");
    }

    // Dominance bookkeeping across every level. Activity is decided by the
    // current level only; the remaining levels feed dom_level. Cell keys are
    // immutable per vertex, so they are computed once here and cached.
    std::int8_t dom_level = kNoDomLevel;
    bool active = false;
    arena_.push_back(v);
    for (int l = 0; l < tables_.level_count(); ++l) keys_.push_back(key_of(s, l));
    ++open_count_;
    ++inserted_total_;
    peak_open_ = std::max(peak_open_, open_count_);
    for (int l = 0; l < tables_.level_count(); ++l) {
      const auto out = tables_.try_dominate(l, key_at(id, l), id, g,
                                            [this](VertexId w) { return arena_[w].g; });
      if (out.became_dominant) {
        if (dom_level == kNoDomLevel) dom_level = static_cast<std::int8_t>(l);
        if (out.displaced != kNoVertex) on_displaced(out.displaced, l);
      }
      if (l == level_) active = out.became_dominant;
    }
    Vertex<State>& stored = arena_[id];
    stored.dom_level = dom_level;
    stored.active = active;
    if (active) {
      active_ids_.push_back(id);  // keeps active ⇒ listed for activation sweeps
      push_heap_entry(id);
    }
    if (trace_) {
      const auto pos = domain_->position(s);
      trace_idx_.push_back(static_cast<std::uint32_t>(trace_->size()));
      trace_->push_back({pos[0], pos[1], VertexFate::kActive});
    }
    return id;
  }

  void on_displaced(VertexId id, int at_level) {
    Vertex<State>& d = arena_[id];
    if (at_level == level_) d.active = false;  // displaced at the search level
    if (d.dom_level == at_level) {
      // Lost its best cell; find the next level where it still dominates.
      d.dom_level = kNoDomLevel;
      for (int l = at_level + 1; l < tables_.level_count(); ++l) {
        if (tables_.dominant(l, key_at(id, l)) == id) {
          d.dom_level = static_cast<std::int8_t>(l);
          break;
        }
      }
    }
  }

  std::uint64_t key_at(VertexId id, int level) const {
    return keys_[static_cast<std::size_t>(id) * static_cast<std::size_t>(tables_.level_count()) +
                 static_cast<std::size_t>(level)];
  }

  void push_heap_entry(VertexId id) {
    Vertex<State>& v = arena_[id];
    if (v.in_heap) return;  // an earlier entry with the same immutable f serves
    v.in_heap = true;
    heap_.push({v.f, id});
  }

  void mark_removed(VertexId id) {
    if (trace_) (*trace_)[trace_idx_[id]].fate = VertexFate::kRemoved;
  }

  void discard_all() {
    if (trace_) {
      for (VertexId id = 0; id < arena_.size(); ++id)
        if (arena_[id].alive) mark_removed(id);
    }
    arena_.clear();
    keys_.clear();
    trace_idx_.clear();
    tables_.clear();
    heap_ = {};
    active_ids_.clear();
    open_count_ = 0;
    removals_since_rebuild_ = 0;
  }

  const D* domain_;
  const ResolutionSchedule<kDims>* schedule_;
  DominanceTable tables_;
  std::vector<Vertex<State>> arena_;
  std::vector<std::uint64_t> keys_;   // per-vertex per-level cell keys, arena-parallel
  std::vector<VertexId> active_ids_;  // superset bookkeeping: active ⇒ listed
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap_;
  std::vector<Successor<State>> scratch_;
  std::vector<TraceNode>* trace_ = nullptr;
  std::vector<std::uint32_t> trace_idx_;
  State root_state_{};
  bool has_root_ = false;
  std::size_t open_count_ = 0;
  std::size_t peak_open_ = 0;
  std::uint64_t inserted_total_ = 0;
  std::size_t removals_since_rebuild_ = 0;
  int level_ = 0;
  int next_level_ = 0;
};

}  // namespace ighastar
