#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ighastar/bench/config.hpp"
#include "ighastar/bench/rankplot.hpp"
#include "ighastar/bench/records.hpp"
#include "ighastar/bench/summary.hpp"
#include "ighastar/bench/svg_render.hpp"
#include "ighastar/core/iha_star.hpp"
#include "ighastar/core/igha_star.hpp"
#include "ighastar/core/rules.hpp"
#include "ighastar/worlds/map_io.hpp"

namespace ighastar {

/// World plus queries, ready to run. The occupancy grid is always present:
/// for the kinodynamic domain it is the analyzed obstacle mask, used by the
/// generator geometry and the renderer; planning consults the elevation map.
struct MaterializedWorld {
  OccupancyGrid grid;
  ElevationMap elev;  // kinodynamic only
  QuerySet queries;
};

inline GoalSpec goal_from(const Query& q) {
  GoalSpec g;
  g.x = q.gx;
  g.y = q.gy;
  g.radius = q.radius;
  return g;
}

/// Flat ground at 0, occupied cells raised to wall_height; analyzed so the
/// step threshold turns every wall boundary into masked obstacle cells.
inline ElevationMap synthesize_elevation(const OccupancyGrid& grid, double wall_height,
                                         double slope_threshold, double step_threshold) {
  ElevationMap m(grid.width(), grid.height(), grid.cell_size());
  for (int iy = 0; iy < grid.height(); ++iy)
    for (int ix = 0; ix < grid.width(); ++ix)
      m.set_height(ix, iy, grid.occupied_cell(ix, iy) ? static_cast<float>(wall_height) : 0.0f);
  m.analyze(slope_threshold, step_threshold);
  return m;
}

/// Obstacle-mask view of an analyzed elevation map, sampled at cell centers.
inline OccupancyGrid mask_grid(const ElevationMap& m) {
  OccupancyGrid g(m.width(), m.height(), m.cell_size());
  for (int iy = 0; iy < m.height(); ++iy)
    for (int ix = 0; ix < m.width(); ++ix)
      g.set(ix, iy,
            m.occupied_at((ix + 0.5) * m.cell_size(), (iy + 0.5) * m.cell_size()));
  return g;
}

template <std::size_t Dims>
ResolutionSchedule<Dims> make_schedule(const ExperimentConfig& cfg) {
  std::array<double, Dims> base{};
  base[0] = cfg.coarsest_cell;
  base[1] = cfg.coarsest_cell;
  if constexpr (Dims >= 3) base[2] = cfg.theta_coarsest;
  if constexpr (Dims >= 4) base[3] = cfg.v_coarsest;
  return ResolutionSchedule<Dims>::geometric(base, cfg.factor, cfg.levels);
}

inline PointRobotDomain::State start_point(const Query& q) { return {q.sx, q.sy}; }
inline KinematicCarDomain::State start_kinematic(const Query& q) {
  return {q.sx, q.sy, wrap_angle(q.stheta)};
}
inline KinodynamicCarDomain::State start_kinodynamic(const Query& q) {
  return {q.sx, q.sy, wrap_angle(q.stheta), q.sv};
}

namespace detail {

/// Generation-time screen: the query must be solvable at the finest level
/// (within validate_budget) and, when required, provably unsolvable at the
/// coarsest — a budget hit at the coarsest level is inconclusive and rejects
/// the draw.
template <class D>
bool query_usable(const D& domain, const typename D::State& start,
                  const ResolutionSchedule<D::kKeyDims>& schedule, bool require_r0_failure,
                  std::uint64_t validate_budget) {
  try {
    HybridOptions opt;
    opt.budget = validate_budget;
    const auto fine = hybrid_astar(domain, start, schedule, schedule.finest_level(), opt);
    if (!fine.found()) return false;
    if (require_r0_failure && schedule.level_count() > 1) {
      const auto coarse = hybrid_astar(domain, start, schedule, 0, opt);
      if (coarse.status != Status::kFailure) return false;
    }
    return true;
  } catch (const query_error&) {
    return false;
  }
}

}  // namespace detail

inline QueryAcceptance make_acceptance(const ExperimentConfig& cfg) {
  switch (cfg.domain) {
    case DomainKind::kPoint:
      return [cfg, schedule = make_schedule<2>(cfg)](const OccupancyGrid& grid,
                                                     const Query& q) {
        const PointRobotDomain domain(grid, goal_from(q), cfg.point);
        return detail::query_usable(domain, start_point(q), schedule, cfg.require_r0_failure,
                                    cfg.validate_budget);
      };
    case DomainKind::kKinematic:
      return [cfg, schedule = make_schedule<3>(cfg)](const OccupancyGrid& grid,
                                                     const Query& q) {
        const KinematicCarDomain domain(grid, goal_from(q), cfg.kinematic);
        return detail::query_usable(domain, start_kinematic(q), schedule,
                                    cfg.require_r0_failure, cfg.validate_budget);
      };
    case DomainKind::kKinodynamic:
      // The elevation map is derived from the finished grid on first call and
      // cached; the generator builds the grid before sampling any query.
      return [cfg, schedule = make_schedule<4>(cfg),
              cache = std::make_shared<ElevationMap>()](const OccupancyGrid& grid,
                                                        const Query& q) {
        if (!cache->analyzed())
          *cache = synthesize_elevation(grid, cfg.wall_height, cfg.slope_threshold,
                                        cfg.step_threshold);
        const KinodynamicCarDomain domain(*cache, goal_from(q), cfg.kinodynamic);
        return detail::query_usable(domain, start_kinodynamic(q), schedule,
                                    cfg.require_r0_failure, cfg.validate_budget);
      };
  }
  throw internal_error("unreachable domain kind");
}

inline MaterializedWorld materialize_world(const ExperimentConfig& cfg) {
  MaterializedWorld w;
  if (cfg.world == WorldKind::kFile) {
    if (cfg.queries_file.empty())
      throw parse_error("world = file requires queries_file");
    if (cfg.domain == DomainKind::kKinodynamic) {
      w.elev = load_elevation(read_file(cfg.world_file), cfg.world_file);
      w.elev.analyze(cfg.slope_threshold, cfg.step_threshold);
      w.grid = mask_grid(w.elev);
    } else {
      w.grid = load_occupancy(read_file(cfg.world_file), cfg.world_file);
    }
    w.queries = load_queries(read_file(cfg.queries_file), cfg.queries_file);
  } else {
    const QueryAcceptance accept = make_acceptance(cfg);
    GeneratedWorld gen = cfg.world == WorldKind::kSingleBarrier
                             ? gen_sb(cfg.seed, cfg.gen, accept)
                             : gen_mb(cfg.seed, cfg.gen, accept);
    w.grid = std::move(gen.grid);
    w.queries = std::move(gen.queries);
    if (cfg.domain == DomainKind::kKinodynamic) {
      w.elev = synthesize_elevation(w.grid, cfg.wall_height, cfg.slope_threshold,
                                    cfg.step_threshold);
      w.grid = mask_grid(w.elev);
    }
  }
  const std::size_t expected_dims = cfg.key_dims();
  if (!cfg.queries_file.empty() && w.queries.state_dims != static_cast<int>(expected_dims))
    throw parse_error(cfg.queries_file + ": query file has " +
                      std::to_string(w.queries.state_dims) + "-dimensional starts, domain needs " +
                      std::to_string(expected_dims));
  w.queries.state_dims = static_cast<int>(expected_dims);
  if (w.queries.queries.empty()) throw query_error("world has no queries");
  return w;
}

namespace detail {

template <class State>
void fill_record(RunRecord& rec, const RunResult<State>& res) {
  rec.status = res.status;
  rec.emissions = res.emissions;
  rec.total_expansions = res.stats.expansions;
  rec.iterations = res.stats.iterations;
  rec.stall_passes = res.stats.stall_passes;
}

/// Runs one (domain, start, rule) combination. Planner exceptions become a
/// failure row with the message in the note column; the sweep never dies on
/// one query.
template <class D>
RunRecord run_rule(const D& domain, const typename D::State& start,
                   const ResolutionSchedule<D::kKeyDims>& schedule, const RuleSpec& spec,
                   std::uint64_t budget, RenderInputs* render) {
  RunRecord rec;
  rec.rule = spec.id;
  try {
    RunResult<typename D::State> res;
    if (spec.kind == RuleSpec::Kind::kRestart) {
      IhaOptions opt;
      opt.budget = budget;
      std::vector<TraceNode> trace;
      if (render) opt.trace = &trace;
      res = iha_star(domain, start, schedule, opt);
      if (render) res.tree = std::move(trace);
    } else {
      SearchOptions opt;
      opt.budget = budget;
      opt.record_tree = render != nullptr;
      if (spec.kind == RuleSpec::Kind::kMonotone) {
        MonotoneRule rule;
        res = igha_star(domain, start, schedule, rule, opt);
      } else {
        HysteresisRule rule;
        rule.threshold = spec.threshold;
        res = igha_star(domain, start, schedule, rule, opt);
      }
    }
    fill_record(rec, res);
    if (render) {
      render->tree = std::move(res.tree);
      render->expansions = res.stats.expansions;
      render->budget = budget;
      for (const auto& s : res.best.states) render->path.push_back(domain.position(s));
    }
  } catch (const std::exception& e) {
    rec.status = Status::kFailure;
    rec.emissions.clear();
    rec.note = e.what();
  }
  return rec;
}

}  // namespace detail

/// Runs one (query, rule) pair against the materialized world. When `render`
/// is non-null the run records its search tree and fills the render inputs.
inline RunRecord run_query(const ExperimentConfig& cfg, const MaterializedWorld& world,
                           const Query& q, const RuleSpec& rule,
                           RenderInputs* render = nullptr) {
  RunRecord rec;
  switch (cfg.domain) {
    case DomainKind::kPoint: {
      const PointRobotDomain domain(world.grid, goal_from(q), cfg.point);
      rec = detail::run_rule(domain, start_point(q), make_schedule<2>(cfg), rule, cfg.budget,
                             render);
      break;
    }
    case DomainKind::kKinematic: {
      const KinematicCarDomain domain(world.grid, goal_from(q), cfg.kinematic);
      rec = detail::run_rule(domain, start_kinematic(q), make_schedule<3>(cfg), rule,
                             cfg.budget, render);
      break;
    }
    case DomainKind::kKinodynamic: {
      const KinodynamicCarDomain domain(world.elev, goal_from(q), cfg.kinodynamic);
      rec = detail::run_rule(domain, start_kinodynamic(q), make_schedule<4>(cfg), rule,
                             cfg.budget, render);
      break;
    }
  }
  rec.query = static_cast<std::uint32_t>(q.id);
  if (render) {
    render->grid = &world.grid;
    render->goal = goal_from(q);
    render->title = "query " + std::to_string(q.id) + " rule " + rule.id;
  }
  return rec;
}

/// Full (query x rule) sweep on a bounded worker pool. Each task is pure over
/// the immutable world, so results land in pre-assigned slots and the output
/// order (query-major, config rule order) is independent of scheduling.
inline std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg,
                                        const MaterializedWorld& world) {
  const std::size_t n_rules = cfg.rules.size();
  const std::size_t n_tasks = world.queries.queries.size() * n_rules;
  std::vector<RunRecord> records(n_tasks);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) break;
      const Query& q = world.queries.queries[i / n_rules];
      const RuleSpec& rule = cfg.rules[i % n_rules];
      records[i] = run_query(cfg, world, q, rule);
    }
  };

  const int extra = std::min<int>(cfg.jobs, static_cast<int>(n_tasks)) - 1;
  std::vector<std::thread> threads;
  for (int t = 0; t < extra; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return records;
}

struct BenchArtifacts {
  std::string world_path;
  std::string queries_path;
  std::string results_path;
  std::string summary_path;
  std::string ranks_path;
  std::vector<std::string> svg_paths;
  std::vector<RunRecord> records;
  std::vector<SummaryRow> summary;
};

/// The bench pipeline: materialize, sweep, reduce, write. Everything under
/// out_dir is a pure function of the config, so repeated runs are
/// byte-identical.
inline BenchArtifacts run_bench(const ExperimentConfig& cfg, std::ostream& log) {
  namespace fs = std::filesystem;
  BenchArtifacts a;
  fs::create_directories(cfg.out_dir);
  const auto out = [&](const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
  };

  MaterializedWorld world = materialize_world(cfg);
  log << "world: " << world.grid.width() << "x" << world.grid.height() << " cells, "
      << world.queries.queries.size() << " queries\n";

  if (cfg.domain == DomainKind::kKinodynamic) {
    a.world_path = out("world.elev");
    write_file(a.world_path, save_elevation(world.elev));
  } else {
    a.world_path = out("world.occ");
    write_file(a.world_path, save_occupancy(world.grid));
  }
  a.queries_path = out("queries.csv");
  write_file(a.queries_path, save_queries(world.queries));

  a.records = run_sweep(cfg, world);
  std::uint64_t aborted = 0;
  for (const RunRecord& r : a.records)
    if (!r.note.empty()) ++aborted;
  if (aborted > 0) log << "warning: " << aborted << " run(s) aborted; see the note column\n";

  a.results_path = out("results.csv");
  {
    std::ostringstream os;
    write_results_csv(os, a.records);
    write_file(a.results_path, os.str());
  }

  std::vector<std::string> rule_ids;
  for (const RuleSpec& r : cfg.rules) rule_ids.push_back(r.id);
  a.summary = summarize(a.records, rule_ids, cfg.seed);
  a.summary_path = out("summary.csv");
  {
    std::ostringstream os;
    write_summary_csv(os, a.summary);
    write_file(a.summary_path, os.str());
  }

  const RankMatrix ranks = rank_matrix(a.records, rule_ids);
  if (ranks.skipped_queries > 0)
    log << "warning: " << ranks.skipped_queries << " query(ies) skipped in the rank matrix\n";
  a.ranks_path = out("ranks.csv");
  {
    std::ostringstream os;
    write_rank_csv(os, ranks);
    write_file(a.ranks_path, os.str());
  }

  if (cfg.render) {
    const Query& q = world.queries.queries.front();
    for (const RuleSpec& rule : cfg.rules) {
      RenderInputs ri;
      run_query(cfg, world, q, rule, &ri);
      const std::string path = out("render_q" + std::to_string(q.id) + "_" + rule.id + ".svg");
      write_file(path, render_svg(ri));
      a.svg_paths.push_back(path);
    }
  }

  log << "results: " << a.results_path << "\n";
  log << "summary: " << a.summary_path << "\n";
  return a;
}

/// The render pipeline: rebuild the configured world, re-run one recorded
/// (query, rule) pair with tree tracing, and emit the SVG.
inline std::string render_run(const ExperimentConfig& cfg, std::uint32_t query_id,
                              const std::string& rule_id) {
  const MaterializedWorld world = materialize_world(cfg);
  const Query* q = nullptr;
  for (const Query& cand : world.queries.queries)
    if (cand.id == static_cast<int>(query_id)) q = &cand;
  if (q == nullptr)
    throw query_error("query " + std::to_string(query_id) + " not present in this world");
  const RuleSpec rule = parse_rule_id(rule_id);
  RenderInputs ri;
  run_query(cfg, world, *q, rule, &ri);
  return render_svg(ri);
}

}  // namespace ighastar
