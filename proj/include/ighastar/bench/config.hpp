#pragma once

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ighastar/domains/kinematic_car.hpp"
#include "ighastar/domains/kinodynamic_car.hpp"
#include "ighastar/domains/point_robot.hpp"
#include "ighastar/util/check.hpp"
#include "ighastar/util/text.hpp"
#include "ighastar/worlds/generators.hpp"

namespace ighastar {

/// Flat `key = value` config file: one assignment per line, `#` comments,
/// blank lines ignored. Typed getters mark keys consumed; finish() rejects
/// anything left over, so typos fail loudly instead of silently defaulting.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text, const std::string& source) {
    KeyValueConfig cfg;
    cfg.source_ = source;
    int line_no = 0;
    for (const std::string& raw : split(text, '\n')) {
      ++line_no;
      std::string line = raw;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw parse_error(source + ":" + std::to_string(line_no) + ": expected `key = value`");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw parse_error(source + ":" + std::to_string(line_no) + ": empty key");
      if (!cfg.values_.emplace(key, value).second)
        throw parse_error(source + ":" + std::to_string(line_no) + ": duplicate key `" + key + "`");
    }
    return cfg;
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  /// CLI flags override file values.
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key, const std::string& def) {
    const auto it = values_.find(key);
    if (it == values_.end()) return def;
    consumed_.insert(key);
    return it->second;
  }

  double get_double(const std::string& key, double def) {
    const auto it = values_.find(key);
    if (it == values_.end()) return def;
    consumed_.insert(key);
    const char* begin = it->second.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') fail(key, "not a number");
    return v;
  }

  std::int64_t get_int(const std::string& key, std::int64_t def) {
    const auto it = values_.find(key);
    if (it == values_.end()) return def;
    consumed_.insert(key);
    const char* begin = it->second.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0') fail(key, "not an integer");
    return v;
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t def) {
    const auto it = values_.find(key);
    if (it == values_.end()) return def;
    consumed_.insert(key);
    const char* begin = it->second.c_str();
    char* end = nullptr;
    const unsigned long long v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0' || it->second.front() == '-')
      fail(key, "not a non-negative integer");
    return v;
  }

  bool get_bool(const std::string& key, bool def) {
    const auto it = values_.find(key);
    if (it == values_.end()) return def;
    consumed_.insert(key);
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    fail(key, "expected true or false");
    return def;  // unreachable
  }

  /// Throws if any key was never consumed by a getter.
  void finish() const {
    std::string unknown;
    for (const auto& [key, value] : values_)
      if (!consumed_.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
    if (!unknown.empty())
      throw parse_error(source_ + ": unknown config keys: " + unknown);
  }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw parse_error(source_ + ": key `" + key + "`: " + what);
  }

  std::string source_;
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
};

enum class DomainKind : std::uint8_t { kPoint, kKinematic, kKinodynamic };
enum class WorldKind : std::uint8_t { kSingleBarrier, kMultiBarrier, kFile };

/// Strategy id string -> rule family + parameter. Ids double as CSV labels.
struct RuleSpec {
  enum class Kind : std::uint8_t { kMonotone, kHysteresis, kRestart };
  Kind kind = Kind::kHysteresis;
  std::uint64_t threshold = 0;  // hysteresis only; kNever encodes "infinite"
  std::string id;
};

inline RuleSpec parse_rule_id(const std::string& id) {
  RuleSpec spec;
  spec.id = id;
  if (id == "monotone") {
    spec.kind = RuleSpec::Kind::kMonotone;
    return spec;
  }
  if (id == "iha-star") {
    spec.kind = RuleSpec::Kind::kRestart;
    return spec;
  }
  if (id == "hinf") {
    spec.kind = RuleSpec::Kind::kHysteresis;
    spec.threshold = std::numeric_limits<std::uint64_t>::max();
    return spec;
  }
  if (id.size() > 1 && id.front() == 'h') {
    const char* begin = id.c_str() + 1;
    char* end = nullptr;
    const unsigned long long t = std::strtoull(begin, &end, 10);
    if (end != begin && *end == '\0') {
      spec.kind = RuleSpec::Kind::kHysteresis;
      spec.threshold = t;
      return spec;
    }
  }
  throw parse_error("unknown rule id `" + id +
                    "` (expected monotone, h<count>, hinf, or iha-star)");
}

/// Everything one benchmark invocation needs, fully resolved and validated.
struct ExperimentConfig {
  DomainKind domain = DomainKind::kPoint;
  WorldKind world = WorldKind::kSingleBarrier;
  std::string world_file;    // world = file
  std::string queries_file;  // optional pre-generated query CSV
  std::uint64_t seed = 1;
  std::uint64_t budget = 100000;
  std::vector<RuleSpec> rules;
  int jobs = 1;
  std::string out_dir = "out";
  bool render = false;  // also write one SVG per rule for the first query

  int levels = 4;
  double coarsest_cell = 8.0;   // x/y cell size at level 0, meters
  double factor = 0.5;          // per-level cell-size multiplier
  double theta_coarsest = 6.283185307179586;  // one heading bin at level 0
  double v_coarsest = 10.0;                   // one speed bin at level 0

  GenParams gen;
  bool require_r0_failure = true;     // only emit queries the coarsest level cannot solve
  std::uint64_t validate_budget = 500000;  // cap for generation-time planner runs

  PointRobotDomain::Params point;
  KinematicCarDomain::Params kinematic;
  KinodynamicCarDomain::Params kinodynamic;
  double slope_threshold = 0.8;  // elevation-map analysis
  double step_threshold = 0.5;
  double wall_height = 2.0;  // height of occupied cells when synthesizing elevation

  static ExperimentConfig from_config(KeyValueConfig& kv) {
    ExperimentConfig c;
    const std::string domain = kv.get_string("domain", "point");
    if (domain == "point") c.domain = DomainKind::kPoint;
    else if (domain == "kinematic") c.domain = DomainKind::kKinematic;
    else if (domain == "kinodynamic") c.domain = DomainKind::kKinodynamic;
    else throw parse_error("unknown domain `" + domain + "`");

    const std::string world = kv.get_string("world", "sb");
    if (world == "sb") c.world = WorldKind::kSingleBarrier;
    else if (world == "mb") c.world = WorldKind::kMultiBarrier;
    else if (world == "file") c.world = WorldKind::kFile;
    else throw parse_error("unknown world `" + world + "`");

    c.world_file = kv.get_string("world_file", "");
    c.queries_file = kv.get_string("queries_file", "");
    if (c.world == WorldKind::kFile && c.world_file.empty())
      throw parse_error("world = file requires world_file");

    c.seed = kv.get_u64("seed", c.seed);
    c.budget = kv.get_u64("budget", c.budget);
    if (c.budget == 0) throw parse_error("budget must be positive");
    c.jobs = static_cast<int>(kv.get_int("jobs", c.jobs));
    if (c.jobs < 1) throw parse_error("jobs must be >= 1");
    c.out_dir = kv.get_string("out", c.out_dir);
    c.render = kv.get_bool("render", c.render);

    for (const std::string& id : split(kv.get_string("rules", "h0,hinf"), ','))
      c.rules.push_back(parse_rule_id(trim(id)));
    if (c.rules.empty()) throw parse_error("rule list must be nonempty");
    for (std::size_t i = 0; i < c.rules.size(); ++i)
      for (std::size_t j = i + 1; j < c.rules.size(); ++j)
        if (c.rules[i].id == c.rules[j].id)
          throw parse_error("duplicate rule id `" + c.rules[i].id + "`");

    c.levels = static_cast<int>(kv.get_int("levels", c.levels));
    if (c.levels < 1) throw parse_error("levels must be >= 1");
    c.coarsest_cell = kv.get_double("coarsest_cell", c.coarsest_cell);
    c.factor = kv.get_double("factor", c.factor);
    if (!(c.factor > 0.0 && c.factor < 1.0))
      throw parse_error("factor must be in (0, 1)");
    c.theta_coarsest = kv.get_double("theta_coarsest", c.theta_coarsest);
    c.v_coarsest = kv.get_double("v_coarsest", c.v_coarsest);

    c.gen.width = static_cast<int>(kv.get_int("map_width", c.gen.width));
    c.gen.height = static_cast<int>(kv.get_int("map_height", c.gen.height));
    c.gen.cell_size = kv.get_double("map_cell", c.gen.cell_size);
    c.gen.walls = static_cast<int>(kv.get_int("walls", c.gen.walls));
    c.gen.wall_thickness = static_cast<int>(kv.get_int("wall_thickness", c.gen.wall_thickness));
    c.gen.gap_width = kv.get_double("gap_width", c.gen.gap_width);
    c.gen.goal_radius = kv.get_double("goal_radius", c.gen.goal_radius);
    c.gen.query_count = static_cast<int>(kv.get_int("query_count", c.gen.query_count));
    c.gen.corner_frac = kv.get_double("corner_frac", c.gen.corner_frac);
    c.gen.max_attempts = static_cast<int>(kv.get_int("max_attempts", c.gen.max_attempts));
    c.require_r0_failure = kv.get_bool("require_r0_failure", c.require_r0_failure);
    c.validate_budget = kv.get_u64("validate_budget", c.validate_budget);

    c.point.step = kv.get_double("point_step", c.point.step);
    c.point.scales = static_cast<int>(kv.get_int("point_scales", c.point.scales));
    if (c.point.scales < 1 || c.point.scales > 16)
      throw parse_error("point_scales must be within [1, 16]");
    c.kinematic.wheelbase = kv.get_double("wheelbase", c.kinematic.wheelbase);
    c.kinematic.arc_length = kv.get_double("arc_length", c.kinematic.arc_length);
    c.kinematic.max_steer = kv.get_double("max_steer", c.kinematic.max_steer);
    c.kinematic.substeps = static_cast<int>(kv.get_int("substeps", c.kinematic.substeps));
    c.kinematic.footprint_length =
        kv.get_double("footprint_length", c.kinematic.footprint_length);
    c.kinematic.footprint_width = kv.get_double("footprint_width", c.kinematic.footprint_width);
    c.kinematic.curvature_penalty =
        kv.get_double("curvature_penalty", c.kinematic.curvature_penalty);

    c.kinodynamic.wheelbase = c.kinematic.wheelbase;
    c.kinodynamic.max_steer = c.kinematic.max_steer;
    c.kinodynamic.footprint_length = c.kinematic.footprint_length;
    c.kinodynamic.footprint_width = c.kinematic.footprint_width;
    c.kinodynamic.duration = kv.get_double("duration", c.kinodynamic.duration);
    c.kinodynamic.accel = kv.get_double("accel", c.kinodynamic.accel);
    c.kinodynamic.substeps =
        static_cast<int>(kv.get_int("kino_substeps", c.kinodynamic.substeps));
    c.kinodynamic.v_min = kv.get_double("v_min", c.kinodynamic.v_min);
    c.kinodynamic.v_max = kv.get_double("v_max", c.kinodynamic.v_max);
    c.kinodynamic.roughness_weight =
        kv.get_double("roughness_weight", c.kinodynamic.roughness_weight);
    c.slope_threshold = kv.get_double("slope_threshold", c.slope_threshold);
    c.step_threshold = kv.get_double("step_threshold", c.step_threshold);
    c.wall_height = kv.get_double("wall_height", c.wall_height);

    const double eps = kv.get_double("epsilon", c.point.epsilon);
    c.point.epsilon = eps;
    c.kinematic.epsilon = eps;
    c.kinodynamic.epsilon = eps;

    kv.finish();
    return c;
  }

  std::size_t key_dims() const {
    switch (domain) {
      case DomainKind::kPoint: return 2;
      case DomainKind::kKinematic: return 3;
      case DomainKind::kKinodynamic: return 4;
    }
    return 2;
  }
};

}  // namespace ighastar
