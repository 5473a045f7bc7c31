// Bench layer: config parsing, rule ids, results/summary/rank CSVs, the SVG
// renderer, the full pipeline's byte-level reproducibility, and the CLI's
// exit-code contract (runs the real binary via IGH_BENCH_BIN).

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ighastar/ighastar.hpp"

namespace fs = std::filesystem;
using namespace ighastar;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("igh_bench_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) { return read_file(p.string()); }

ExperimentConfig config_from(const std::string& text) {
  KeyValueConfig kv = KeyValueConfig::parse(text, "<test>");
  return ExperimentConfig::from_config(kv);
}

RunRecord record(std::uint32_t query, std::string rule, Status status,
                 std::vector<Emission> emissions, std::uint64_t total) {
  RunRecord r;
  r.query = query;
  r.rule = std::move(rule);
  r.status = status;
  r.emissions = std::move(emissions);
  r.total_expansions = total;
  r.iterations = 1;
  return r;
}

/// Runs the bench binary, returns its exit code (-1 if it did not exit).
int cli(const std::string& args) {
  const std::string cmd = std::string(IGH_BENCH_BIN) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("key-value config parses assignments, comments, and blanks") {
  KeyValueConfig kv = KeyValueConfig::parse(
      "# leading comment\n"
      "\n"
      "alpha = 3.5   # trailing comment\n"
      "  name=  spaced value\n"
      "flag = true\n"
      "count = 42\n",
      "test.cfg");
  CHECK(kv.has("alpha"));
  CHECK_FALSE(kv.has("beta"));
  CHECK(kv.get_double("alpha", 0.0) == 3.5);
  CHECK(kv.get_string("name", "") == "spaced value");
  CHECK(kv.get_bool("flag", false));
  CHECK(kv.get_int("count", 0) == 42);
  CHECK(kv.get_u64("count", 0) == 42);
  CHECK(kv.get_string("missing", "fallback") == "fallback");
  kv.finish();  // every present key was consumed
}

TEST_CASE("key-value config rejects malformed lines") {
  CHECK_THROWS_MATCHES(KeyValueConfig::parse("novalue\n", "t.cfg"), parse_error,
                       MessageMatches(ContainsSubstring("t.cfg:1: expected `key = value`")));
  CHECK_THROWS_MATCHES(KeyValueConfig::parse("a = 1\n = 3\n", "t.cfg"), parse_error,
                       MessageMatches(ContainsSubstring("t.cfg:2: empty key")));
  CHECK_THROWS_MATCHES(KeyValueConfig::parse("a = 1\na = 2\n", "t.cfg"), parse_error,
                       MessageMatches(ContainsSubstring("duplicate key `a`")));
}

TEST_CASE("key-value config getters validate their value syntax") {
  KeyValueConfig kv = KeyValueConfig::parse(
      "num = abc\nint = 1.5\ncount = -3\nflag = yes\n", "t.cfg");
  CHECK_THROWS_MATCHES(kv.get_double("num", 0.0), parse_error,
                       MessageMatches(ContainsSubstring("key `num`: not a number")));
  CHECK_THROWS_MATCHES(kv.get_int("int", 0), parse_error,
                       MessageMatches(ContainsSubstring("not an integer")));
  CHECK_THROWS_MATCHES(kv.get_u64("count", 0), parse_error,
                       MessageMatches(ContainsSubstring("not a non-negative integer")));
  CHECK_THROWS_MATCHES(kv.get_bool("flag", false), parse_error,
                       MessageMatches(ContainsSubstring("expected true or false")));
}

TEST_CASE("key-value config reports unconsumed keys and applies overrides") {
  KeyValueConfig kv = KeyValueConfig::parse("alpha = 1\nzzz_typo = 2\n", "t.cfg");
  kv.set("alpha", "9");  // CLI override wins over the file value
  CHECK(kv.get_double("alpha", 0.0) == 9.0);
  CHECK_THROWS_MATCHES(kv.finish(), parse_error,
                       MessageMatches(ContainsSubstring("unknown config keys: zzz_typo")));
}

TEST_CASE("rule ids parse to the right family and parameter") {
  CHECK(parse_rule_id("monotone").kind == RuleSpec::Kind::kMonotone);
  CHECK(parse_rule_id("iha-star").kind == RuleSpec::Kind::kRestart);

  const RuleSpec h0 = parse_rule_id("h0");
  CHECK(h0.kind == RuleSpec::Kind::kHysteresis);
  CHECK(h0.threshold == 0);
  CHECK(h0.id == "h0");

  CHECK(parse_rule_id("h250").threshold == 250);
  CHECK(parse_rule_id("hinf").threshold == HysteresisRule::kNever);

  CHECK_THROWS_AS(parse_rule_id("h"), parse_error);
  CHECK_THROWS_AS(parse_rule_id("h5x"), parse_error);
  CHECK_THROWS_AS(parse_rule_id("greedy"), parse_error);
  CHECK_THROWS_AS(parse_rule_id(""), parse_error);
}

TEST_CASE("experiment config fills documented defaults") {
  const ExperimentConfig c = config_from("");
  CHECK(c.domain == DomainKind::kPoint);
  CHECK(c.world == WorldKind::kSingleBarrier);
  CHECK(c.seed == 1);
  CHECK(c.budget == 100000);
  CHECK(c.jobs == 1);
  CHECK(c.out_dir == "out");
  CHECK_FALSE(c.render);
  REQUIRE(c.rules.size() == 2);
  CHECK(c.rules[0].id == "h0");
  CHECK(c.rules[1].id == "hinf");
  CHECK(c.levels == 4);
  CHECK(c.coarsest_cell == 8.0);
  CHECK(c.factor == 0.5);
  CHECK(c.require_r0_failure);
  CHECK(c.validate_budget == 500000);
  CHECK(c.key_dims() == 2);

  CHECK(config_from("domain = kinematic\n").key_dims() == 3);
  CHECK(config_from("domain = kinodynamic\n").key_dims() == 4);

  // the kinodynamic car shares the chassis keys with the kinematic car
  const ExperimentConfig k = config_from("domain = kinodynamic\nwheelbase = 2.5\n");
  CHECK(k.kinodynamic.wheelbase == 2.5);
  CHECK(k.kinematic.wheelbase == 2.5);

  const ExperimentConfig e = config_from("epsilon = 0.01\n");
  CHECK(e.point.epsilon == 0.01);
  CHECK(e.kinematic.epsilon == 0.01);
  CHECK(e.kinodynamic.epsilon == 0.01);
}

TEST_CASE("experiment config rejects invalid settings") {
  CHECK_THROWS_MATCHES(config_from("domain = hover\n"), parse_error,
                       MessageMatches(ContainsSubstring("unknown domain")));
  CHECK_THROWS_MATCHES(config_from("world = maze\n"), parse_error,
                       MessageMatches(ContainsSubstring("unknown world")));
  CHECK_THROWS_MATCHES(config_from("world = file\n"), parse_error,
                       MessageMatches(ContainsSubstring("requires world_file")));
  CHECK_THROWS_MATCHES(config_from("budget = 0\n"), parse_error,
                       MessageMatches(ContainsSubstring("budget must be positive")));
  CHECK_THROWS_MATCHES(config_from("jobs = 0\n"), parse_error,
                       MessageMatches(ContainsSubstring("jobs must be >= 1")));
  CHECK_THROWS_MATCHES(config_from("rules = h0,h0\n"), parse_error,
                       MessageMatches(ContainsSubstring("duplicate rule id `h0`")));
  CHECK_THROWS_AS(config_from("rules = q5\n"), parse_error);
  CHECK_THROWS_MATCHES(config_from("levels = 0\n"), parse_error,
                       MessageMatches(ContainsSubstring("levels must be >= 1")));
  CHECK_THROWS_MATCHES(config_from("factor = 1.0\n"), parse_error,
                       MessageMatches(ContainsSubstring("factor must be in (0, 1)")));
  CHECK_THROWS_AS(config_from("factor = 0\n"), parse_error);
  CHECK_THROWS_MATCHES(config_from("warp = 9\n"), parse_error,
                       MessageMatches(ContainsSubstring("unknown config keys: warp")));
}

TEST_CASE("results CSV round-trips records exactly") {
  std::vector<RunRecord> in;
  in.push_back(record(0, "h0", Status::kOptimalTerminated,
                      {{1.0 / 3.0, 17, 0}, {0.25, 40, 2}}, 55));
  in.back().iterations = 3;
  in.back().stall_passes = 1;
  in.push_back(record(1, "iha-star", Status::kFailure, {}, 9));
  in.back().note = "boom, with; separators\nand lines";
  in.push_back(record(2, "hinf", Status::kBudget, {{7.25, 100, 1}}, 100));

  std::ostringstream os;
  write_results_csv(os, in);
  const std::vector<RunRecord> out = read_results_csv(os.str(), "mem");
  REQUIRE(out.size() == 3);
  for (std::size_t i = 0; i < in.size(); ++i) {
    CHECK(out[i].query == in[i].query);
    CHECK(out[i].rule == in[i].rule);
    CHECK(out[i].status == in[i].status);
    CHECK(out[i].total_expansions == in[i].total_expansions);
    CHECK(out[i].iterations == in[i].iterations);
    CHECK(out[i].stall_passes == in[i].stall_passes);
    REQUIRE(out[i].emissions.size() == in[i].emissions.size());
    for (std::size_t j = 0; j < in[i].emissions.size(); ++j) {
      CHECK(out[i].emissions[j].cost == in[i].emissions[j].cost);  // fmt_double round-trips
      CHECK(out[i].emissions[j].expansions == in[i].emissions[j].expansions);
      CHECK(out[i].emissions[j].iteration == in[i].emissions[j].iteration);
    }
  }
  CHECK(out[1].note == "boom  with  separators and lines");

  // a second write of the parsed records is byte-identical
  std::ostringstream os2;
  write_results_csv(os2, out);
  CHECK(os2.str() == os.str());
}

TEST_CASE("results CSV rejects tampered rows") {
  const std::string header = std::string(kResultsHeader) + "\n" + kResultsColumns + "\n";
  const auto reject = [&](const std::string& row, const std::string& why) {
    CHECK_THROWS_MATCHES(read_results_csv(header + row, "m"), parse_error,
                         MessageMatches(ContainsSubstring(why)));
  };
  CHECK_THROWS_MATCHES(read_results_csv("garbage\n", "m"), parse_error,
                       MessageMatches(ContainsSubstring("not a results CSV")));
  reject("0,h0,failure,,,,,0,1,0,\n", "expected 12 fields");
  reject("0,h0,done,,,,,0,1,0,,\n", "unknown status");
  reject("0,,failure,,,,,0,1,0,,\n", "empty rule id");
  reject("0,h0,failure,,,,,-5,1,0,,\n", "bad count");
  reject("0,h0,budget,2,10,1.5,30,30,1,0,2@10,\n", "bad emission");
  // derived first/best columns must match the emission log
  reject("0,h0,budget,3,10,1.5,30,30,1,0,2@10@0;1.5@30@1,\n", "disagree");
  reject("0,h0,budget,,10,1.5,30,30,1,0,2@10@0;1.5@30@1,\n", "blank first/best");
  reject("0,h0,failure,2,,,,30,1,0,,\n", "pathless run with nonblank");
  // the untampered forms of those rows parse
  CHECK(read_results_csv(header + "0,h0,budget,2,10,1.5,30,30,1,0,2@10@0;1.5@30@1,\n", "m")
            .size() == 1);
  CHECK(read_results_csv(header + "0,h0,failure,,,,,30,1,0,,\n", "m").size() == 1);
}

TEST_CASE("median helper handles odd and even samples") {
  CHECK(detail::median_of({3.0}) == 3.0);
  CHECK(detail::median_of({2.0, 1.0}) == 1.5);
  CHECK(detail::median_of({5.0, 1.0, 3.0}) == 3.0);
  CHECK(detail::median_of({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK_THROWS_AS(detail::median_of({}), internal_error);
}

TEST_CASE("summary statistics match a hand-computed fixture") {
  // q0: a beats b; q1: exact tie; q2: only b solves; q3: neither does.
  std::vector<RunRecord> recs;
  recs.push_back(record(0, "a", Status::kOptimalTerminated, {{10.0, 10, 0}}, 10));
  recs.push_back(record(0, "b", Status::kBudget, {{12.0, 20, 0}}, 50));
  recs.push_back(record(0, "iha-star", Status::kOptimalTerminated, {{10.0, 100, 2}}, 100));
  recs.push_back(record(1, "a", Status::kBudget, {{5.0, 30, 0}}, 40));
  recs.push_back(record(1, "b", Status::kOptimalTerminated, {{5.0, 30, 0}}, 60));
  recs.push_back(record(1, "iha-star", Status::kBudget, {{5.0, 80, 1}}, 80));
  recs.push_back(record(2, "a", Status::kFailure, {}, 30));
  recs.push_back(record(2, "b", Status::kOptimalTerminated, {{9.0, 5, 0}}, 20));
  recs.push_back(record(2, "iha-star", Status::kOptimalTerminated, {{9.0, 60, 1}}, 60));
  recs.push_back(record(3, "a", Status::kFailure, {}, 0));
  recs.push_back(record(3, "b", Status::kFailure, {}, 0));

  const std::vector<std::string> rules = {"a", "b", "iha-star"};
  const std::vector<SummaryRow> rows = summarize(recs, rules, 99, 500);

  const auto row = [&](const std::string& kind, const std::string& a, const std::string& b,
                       const std::string& metric) {
    const SummaryRow* r = find_row(rows, kind, a, b, metric);
    REQUIRE(r != nullptr);
    return r;
  };

  CHECK(row("rule", "a", "", "found_ratio")->value == 0.5);
  CHECK(row("rule", "a", "", "found_ratio")->n == 4);
  CHECK(row("rule", "a", "", "optimal_ratio")->value == 0.25);
  CHECK(row("rule", "a", "", "median_first_expansions")->value == 20.0);
  CHECK(row("rule", "a", "", "median_first_expansions")->n == 2);
  CHECK(row("rule", "b", "", "found_ratio")->value == 0.75);
  CHECK(row("rule", "b", "", "optimal_ratio")->value == 0.5);
  CHECK(row("rule", "b", "", "median_first_expansions")->value == 20.0);
  CHECK(row("rule", "iha-star", "", "found_ratio")->value == 1.0);
  CHECK(row("rule", "iha-star", "", "median_first_expansions")->value == 80.0);

  const SummaryRow* wab = row("pair", "a", "b", "win_ratio");
  const SummaryRow* wba = row("pair", "b", "a", "win_ratio");
  const SummaryRow* tie = row("pair", "a", "b", "tie_ratio");
  CHECK(wab->value == 0.25);
  CHECK(wab->n == 4);
  CHECK(wba->value == 0.25);
  CHECK(tie->value == 0.5);
  CHECK(row("pair", "b", "a", "tie_ratio")->value == 0.5);
  CHECK(wab->value + wba->value + tie->value == 1.0);  // win/tie/loss partition

  // a's only win over b is q0, where b paid 20 to a's 10
  const SummaryRow* sab = row("pair", "a", "b", "cond_speedup");
  CHECK(sab->value == 2.0);
  CHECK(sab->n == 1);
  // b's win (q2) has no finite a ratio, so the row is absent entirely
  CHECK(find_row(rows, "pair", "b", "a", "cond_speedup") == nullptr);

  // termination ratio vs the restart planner over its finished queries q0, q2
  CHECK(row("vs_iha", "a", "iha-star", "termination_ratio_median")->value == 6.0);
  CHECK(row("vs_iha", "a", "iha-star", "termination_ratio_median")->n == 2);
  CHECK(row("vs_iha", "b", "iha-star", "termination_ratio_median")->value == 2.5);
  CHECK(find_row(rows, "vs_iha", "iha-star", "iha-star", "termination_ratio_median") ==
        nullptr);

  for (const SummaryRow& r : rows) CHECK(r.lo <= r.hi);

  // same records and seed give identical rows, intervals included
  const std::vector<SummaryRow> again = summarize(recs, rules, 99, 500);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].kind == rows[i].kind);
    CHECK(again[i].metric == rows[i].metric);
    CHECK(again[i].value == rows[i].value);
    CHECK(again[i].lo == rows[i].lo);
    CHECK(again[i].hi == rows[i].hi);
  }

  // a listed rule with no rows contributes nothing instead of crashing
  const std::vector<SummaryRow> sparse = summarize(recs, {"a", "ghost"}, 99, 50);
  for (const SummaryRow& r : sparse) {
    CHECK(r.a != "ghost");
    CHECK(r.b != "ghost");
  }

  // duplicate (query, rule) rows violate an invariant
  CHECK_THROWS_AS(summarize({recs[0], recs[0]}, {"a"}, 1, 10), internal_error);
}

TEST_CASE("rank matrix uses competition ranking with unsolved runs last") {
  std::vector<RunRecord> recs;
  recs.push_back(record(0, "a", Status::kOptimalTerminated, {{1.0, 10, 0}}, 10));
  recs.push_back(record(0, "b", Status::kOptimalTerminated, {{1.0, 20, 0}}, 20));
  recs.push_back(record(0, "c", Status::kOptimalTerminated, {{1.0, 30, 0}}, 30));
  recs.push_back(record(1, "a", Status::kOptimalTerminated, {{1.0, 5, 0}}, 5));
  recs.push_back(record(1, "b", Status::kOptimalTerminated, {{1.0, 5, 0}}, 5));
  recs.push_back(record(1, "c", Status::kOptimalTerminated, {{1.0, 7, 0}}, 7));
  recs.push_back(record(2, "a", Status::kBudget, {{1.0, 10, 0}}, 10));
  recs.push_back(record(2, "b", Status::kFailure, {}, 3));
  recs.push_back(record(2, "c", Status::kFailure, {}, 3));
  recs.push_back(record(3, "a", Status::kOptimalTerminated, {{1.0, 1, 0}}, 1));
  recs.push_back(record(3, "b", Status::kOptimalTerminated, {{1.0, 2, 0}}, 2));
  recs.push_back(record(0, "zzz", Status::kFailure, {}, 1));  // unknown rule: ignored

  const RankMatrix m = rank_matrix(recs, {"a", "b", "c"});
  CHECK(m.used_queries == 3);
  CHECK(m.skipped_queries == 1);  // q3 has no c row
  REQUIRE(m.percent.size() == 3);

  CHECK(m.percent[0][0] == 100.0);  // a is first everywhere
  CHECK(m.percent[0][1] == 0.0);
  CHECK(m.percent[1][0] == 100.0 * 1.0 / 3.0);  // b: first on the q1 tie
  CHECK(m.percent[1][1] == 100.0 * 2.0 / 3.0);  // b: second on q0, q2
  CHECK(m.percent[1][2] == 0.0);
  CHECK(m.percent[2][1] == 100.0 * 1.0 / 3.0);  // c: unsolved ties with b on q2
  CHECK(m.percent[2][2] == 100.0 * 2.0 / 3.0);

  for (const auto& rule_row : m.percent) {
    double sum = 0.0;
    for (double p : rule_row) sum += p;
    CHECK(sum == Catch::Approx(100.0));
  }

  std::ostringstream os;
  write_rank_csv(os, m);
  CHECK_THAT(os.str(), ContainsSubstring(kRankHeader));
  CHECK_THAT(os.str(), ContainsSubstring("rule,rank1,rank2,rank3"));
  CHECK_THAT(os.str(), ContainsSubstring("a,100,0,0"));

  CHECK_THROWS_AS(rank_matrix(recs, {}), internal_error);
  std::vector<RunRecord> dup = {recs[0], recs[0]};
  CHECK_THROWS_AS(rank_matrix(dup, {"a"}), internal_error);
}

TEST_CASE("SVG rendering is deterministic and annotated") {
  OccupancyGrid grid(8, 6, 1.0);
  for (int ix = 3; ix <= 4; ++ix)
    for (int iy = 2; iy <= 3; ++iy) grid.set(ix, iy, true);

  RenderInputs in;
  in.grid = &grid;
  in.goal.x = 6.5;
  in.goal.y = 4.5;
  in.goal.radius = 1.0;
  in.tree = {{1.0, 1.0, VertexFate::kActive},
             {2.0, 1.5, VertexFate::kActive},
             {1.5, 2.5, VertexFate::kInactive},
             {0.5, 0.5, VertexFate::kRemoved},
             {5.0, 5.0, VertexFate::kRemoved}};
  in.path = {{1.0, 1.0}, {2.0, 1.5}, {6.5, 4.5}};
  in.expansions = 42;
  in.budget = 100;
  in.title = "query 0 rule h0";

  const std::string svg = render_svg(in);
  CHECK(svg == render_svg(in));
  CHECK(svg.starts_with("<svg "));
  CHECK(svg.ends_with("</svg>\n"));
  CHECK_THAT(svg, ContainsSubstring("active=2 deactivated=1 removed=2 expansions=42"));
  CHECK_THAT(svg, ContainsSubstring("<title>query 0 rule h0</title>"));
  CHECK_THAT(svg, ContainsSubstring("expansions: 42 / 100"));
  CHECK_THAT(svg, ContainsSubstring("<polyline"));

  RenderInputs open_ended = in;
  open_ended.budget = kUnlimited;
  CHECK_THAT(render_svg(open_ended), ContainsSubstring("expansions: 42</text>"));

  RenderInputs far_goal = in;
  far_goal.goal.x = 9.5;
  CHECK_THROWS_AS(render_svg(far_goal), query_error);

  RenderInputs stray = in;
  stray.tree.push_back({8.5, 1.0, VertexFate::kActive});
  CHECK_THROWS_AS(render_svg(stray), query_error);

  RenderInputs no_grid;
  CHECK_THROWS_AS(render_svg(no_grid), internal_error);
}

TEST_CASE("synthesized elevation masks walls plus a one-cell boundary ring") {
  OccupancyGrid g(10, 10, 1.0);
  g.set(5, 5, true);
  const ElevationMap m = synthesize_elevation(g, 2.0, 0.8, 0.5);
  REQUIRE(m.analyzed());
  const OccupancyGrid mask = mask_grid(m);
  CHECK(mask.occupied_cell(5, 5));
  CHECK(mask.occupied_cell(4, 5));  // step boundary, 4-neighborhood
  CHECK(mask.occupied_cell(5, 6));
  CHECK_FALSE(mask.occupied_cell(6, 6));  // diagonal sees no step
  CHECK_FALSE(mask.occupied_cell(3, 5));
  CHECK_FALSE(mask.occupied_cell(1, 1));
}

TEST_CASE("bench pipeline is reproducible byte for byte") {
  const fs::path dir_a = fresh_dir("pipeline_a");
  const fs::path dir_b = fresh_dir("pipeline_b");
  const std::string base =
      "domain = point\n"
      "world = sb\n"
      "seed = 11\n"
      "budget = 30000\n"
      "rules = h0,hinf,iha-star\n"
      "levels = 3\n"
      "coarsest_cell = 4\n"
      "map_width = 24\n"
      "map_height = 24\n"
      "query_count = 3\n"
      "require_r0_failure = false\n"
      "render = true\n";
  const ExperimentConfig cfg_a = config_from(base + "out = " + dir_a.string() + "\n");
  const ExperimentConfig cfg_b = config_from(base + "out = " + dir_b.string() + "\n");
  std::ostringstream log_a, log_b;
  const BenchArtifacts a = run_bench(cfg_a, log_a);
  const BenchArtifacts b = run_bench(cfg_b, log_b);

  REQUIRE(a.records.size() == 9);
  const auto same = [&](const std::string& name) {
    INFO(name);
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  };
  same("world.occ");
  same("queries.csv");
  same("results.csv");
  same("summary.csv");
  same("ranks.csv");
  REQUIRE(a.svg_paths.size() == 3);
  REQUIRE(b.svg_paths.size() == 3);
  for (const std::string& p : a.svg_paths) same(fs::path(p).filename().string());

  // records land query-major in the configured rule order, none aborted
  std::vector<std::string> ids;
  for (const RuleSpec& r : cfg_a.rules) ids.push_back(r.id);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].rule == ids[i % ids.size()]);
    CHECK(a.records[i].query == a.records[(i / ids.size()) * ids.size()].query);
    CHECK(a.records[i].note.empty());
  }

  // the written summary is recomputable from the raw results CSV alone
  const std::vector<RunRecord> parsed =
      read_results_csv(slurp(dir_a / "results.csv"), "results");
  std::ostringstream redo;
  write_summary_csv(redo, summarize(parsed, ids, cfg_a.seed));
  CHECK(redo.str() == slurp(dir_a / "summary.csv"));

  // a multi-worker sweep produces the identical result order
  const ExperimentConfig cfg_j = config_from(base + "jobs = 3\nout = " + dir_b.string() + "\n");
  const MaterializedWorld world = materialize_world(cfg_j);
  const std::vector<RunRecord> threaded = run_sweep(cfg_j, world);
  REQUIRE(threaded.size() == a.records.size());
  std::ostringstream st, ss;
  write_results_csv(st, threaded);
  write_results_csv(ss, a.records);
  CHECK(st.str() == ss.str());
}

TEST_CASE("bench from saved world and query files matches the generated run") {
  const fs::path dir_gen = fresh_dir("file_gen");
  const fs::path dir_file = fresh_dir("file_replay");
  const std::string common =
      "domain = point\n"
      "seed = 11\n"
      "budget = 30000\n"
      "rules = h0,iha-star\n"
      "levels = 3\n"
      "coarsest_cell = 4\n"
      "map_width = 24\n"
      "map_height = 24\n"
      "query_count = 2\n"
      "require_r0_failure = false\n";
  const ExperimentConfig cfg_gen =
      config_from(common + "world = sb\nout = " + dir_gen.string() + "\n");
  std::ostringstream log;
  run_bench(cfg_gen, log);

  const ExperimentConfig cfg_file = config_from(
      common + "world = file\nworld_file = " + (dir_gen / "world.occ").string() +
      "\nqueries_file = " + (dir_gen / "queries.csv").string() + "\nout = " +
      dir_file.string() + "\n");
  run_bench(cfg_file, log);

  for (const std::string name : {"world.occ", "queries.csv", "results.csv", "summary.csv",
                                 "ranks.csv"}) {
    INFO(name);
    CHECK(slurp(dir_gen / name) == slurp(dir_file / name));
  }

  // a query file from another domain is rejected by dimension
  const ExperimentConfig mismatched = config_from(
      "domain = kinematic\nworld = file\nworld_file = " + (dir_gen / "world.occ").string() +
      "\nqueries_file = " + (dir_gen / "queries.csv").string() + "\n");
  CHECK_THROWS_MATCHES(materialize_world(mismatched), parse_error,
                       MessageMatches(ContainsSubstring("2-dimensional starts")));
}

TEST_CASE("CLI maps outcomes to exit codes") {
  const fs::path dir = fresh_dir("cli");
  const std::string cfg_path = (dir / "exp.cfg").string();
  write_file(cfg_path,
             "domain = point\nworld = sb\nseed = 3\nbudget = 20000\nrules = h0,iha-star\n"
             "levels = 3\ncoarsest_cell = 4\nmap_width = 20\nmap_height = 20\n"
             "query_count = 2\nrequire_r0_failure = false\nout = " +
                 (dir / "out").string() + "\n");

  CHECK(cli("--help") == 0);
  CHECK(cli("") == 1);
  CHECK(cli("frobnicate") == 1);

  CHECK(cli("gen --config " + cfg_path) == 0);
  CHECK(fs::exists(dir / "out" / "world.occ"));
  CHECK(fs::exists(dir / "out" / "queries.csv"));

  // overriding the seed produces a different world and query set
  CHECK(cli("gen --config " + cfg_path + " --seed 4 --out " + (dir / "out4").string()) == 0);
  CHECK(slurp(dir / "out4" / "queries.csv") != slurp(dir / "out" / "queries.csv"));

  CHECK(cli("bench --config " + cfg_path) == 0);
  CHECK(fs::exists(dir / "out" / "results.csv"));
  CHECK(fs::exists(dir / "out" / "summary.csv"));

  // the rankplot subcommand reproduces the ranks the bench wrote
  const std::string ranks2 = (dir / "ranks2.csv").string();
  CHECK(cli("rankplot " + (dir / "out" / "results.csv").string() + " --out " + ranks2) == 0);
  CHECK(slurp(ranks2) == slurp(dir / "out" / "ranks.csv"));

  const std::string svg_path = (dir / "q0.svg").string();
  CHECK(cli("render --config " + cfg_path + " --query 0 --rule h0 --svg " + svg_path) == 0);
  CHECK_THAT(slurp(svg_path), ContainsSubstring("<svg "));

  // config and input problems exit 2
  const std::string bad_key = (dir / "bad_key.cfg").string();
  write_file(bad_key, "warp_speed = 9\n");
  CHECK(cli("gen --config " + bad_key) == 2);
  const std::string bad_factor = (dir / "bad_factor.cfg").string();
  write_file(bad_factor, "factor = 2.0\n");
  CHECK(cli("gen --config " + bad_factor) == 2);
  CHECK(cli("rankplot " + (dir / "missing.csv").string()) == 2);
  CHECK(cli("rankplot " + cfg_path) == 2);  // exists but is not a results CSV
  CHECK(cli("render --config " + cfg_path + " --query 99 --rule h0 --svg " + svg_path) == 2);

  // invariant violations exit 3: cells so fine the integer keys overflow
  const std::string bad_cells = (dir / "bad_cells.cfg").string();
  write_file(bad_cells,
             "domain = point\nworld = sb\nseed = 3\nbudget = 100\nlevels = 1\n"
             "coarsest_cell = 0.00001\nmap_width = 20\nmap_height = 20\nquery_count = 1\n"
             "require_r0_failure = false\nout = " +
                 (dir / "out3").string() + "\n");
  CHECK(cli("gen --config " + bad_cells) == 3);
}
