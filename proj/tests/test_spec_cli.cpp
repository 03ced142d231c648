#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <sys/wait.h>
#include <tuple>
#include <vector>

#include "rrw/check.hpp"
#include "rrw/spec_io.hpp"

using namespace rrw;
using doctest::Contains;

namespace {

const std::string kData = RRW_DATA_DIR;

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string read_file(const std::string& file) {
  std::ifstream in(file);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// temp files land in the test's working directory
std::string write_tmp(const std::string& name, const std::string& text) {
  std::string file = "spec_cli_tmp_" + name;
  std::ofstream out(file);
  out << text;
  return file;
}

struct cli_result {
  int exit_code = -1;
  std::string out;
};

// runs the installed binary through the shell; stderr is folded into the
// captured text unless the caller wants stdout alone
cli_result run_cli(const std::string& args, bool merge_stderr = true) {
  const char* bin = std::getenv("RRWALK_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "set RRWALK_BIN to the rrwalk binary");
  std::string cmd = std::string(bin) + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  cli_result res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("graph specs round-trip through JSON") {
  graph_spec four = load_graph_spec(kData + "/cerrw4.json");
  std::string text = serialize_graph_spec(four);
  graph_spec again = parse_graph_spec(text);

  CHECK_EQ(again.graph.sp.size(), four.graph.sp.size());
  for (state i = 0; i < four.graph.sp.size(); ++i)
    CHECK_EQ(again.graph.sp.label(i), four.graph.sp.label(i));
  CHECK_EQ(again.graph.color_names, four.graph.color_names);
  CHECK_EQ(again.graph.alpha, four.graph.alpha);
  REQUIRE_EQ(again.graph.edges.size(), four.graph.edges.size());
  for (std::size_t e = 0; e < four.graph.edges.size(); ++e) {
    CHECK_EQ(again.graph.edges[e].from, four.graph.edges[e].from);
    CHECK_EQ(again.graph.edges[e].to, four.graph.edges[e].to);
    CHECK_EQ(again.graph.edges[e].color, four.graph.edges[e].color);
    CHECK_EQ(again.graph.edges[e].beta, four.graph.edges[e].beta);
  }
  CHECK_EQ(again.x0, four.x0);
  CHECK(again.dummies.empty());
  // serialization is a fixed point after one round
  CHECK_EQ(serialize_graph_spec(again), text);

  graph_spec dab = load_graph_spec(kData + "/dummy_ab.json");
  graph_spec dab2 = parse_graph_spec(serialize_graph_spec(dab));
  REQUIRE_EQ(dab2.dummies.size(), dab.dummies.size());
  REQUIRE_EQ(dab.dummies.size(), 2);
  for (std::size_t d = 0; d < dab.dummies.size(); ++d) {
    CHECK_EQ(dab2.dummies[d].from, dab.dummies[d].from);
    CHECK_EQ(dab2.dummies[d].to, dab.dummies[d].to);
    CHECK_EQ(dab2.dummies[d].count, dab.dummies[d].count);
    CHECK_EQ(dab2.dummies[d].in_color, dab.dummies[d].in_color);
    CHECK_EQ(dab2.dummies[d].out_color, dab.dummies[d].out_color);
    CHECK_EQ(dab2.dummies[d].in_beta, dab.dummies[d].in_beta);
    CHECK_EQ(dab2.dummies[d].out_beta, dab.dummies[d].out_beta);
  }

  std::string tmp = write_tmp("roundtrip.json", text);
  graph_spec reloaded = load_graph_spec(tmp);
  CHECK_EQ(serialize_graph_spec(reloaded), text);
  std::remove(tmp.c_str());
}

TEST_CASE("weights parse exactly in every written form") {
  std::string spec = R"({
    "vertices": ["a", "b", "c"],
    "colors": [{"name": "c1", "alpha": "3/2"},
               {"name": "c2", "alpha": "0.25"},
               {"name": "c3", "alpha": 2}],
    "edges": [{"from": "a", "to": "b", "color": "c1", "beta": "7/3"},
              {"from": "b", "to": "a", "color": "c2", "beta": "0.5"},
              {"from": "b", "to": "c", "color": "c3", "beta": 2}],
    "x0": "a"
  })";
  graph_spec gs = parse_graph_spec(spec);
  CHECK_EQ(gs.graph.alpha[0], rat(3, 2));
  CHECK_EQ(gs.graph.alpha[1], rat(1, 4));
  CHECK_EQ(gs.graph.alpha[2], rat(2));
  CHECK_EQ(gs.graph.edges[0].beta, rat(7, 3));
  CHECK_EQ(gs.graph.edges[1].beta, rat(1, 2));
  CHECK_EQ(gs.graph.edges[2].beta, rat(2));

  // a raw JSON float is a binary double, not the decimal the author wrote
  std::string floaty = spec;
  floaty.replace(floaty.find("\"3/2\""), 5, "1.5");
  CHECK_THROWS_WITH_AS(parse_graph_spec(floaty), Contains("a JSON float is not exact"),
                       input_error);

  std::string garbage = spec;
  garbage.replace(garbage.find("\"3/2\""), 5, "true");
  CHECK_THROWS_WITH_AS(parse_graph_spec(garbage), Contains("expected a weight"), input_error);
}

TEST_CASE("spec parsing names the missing or unknown field") {
  CHECK_THROWS_WITH_AS(parse_graph_spec("{\"x0\": \"a\"}"),
                       Contains("missing key \"vertices\""), input_error);
  CHECK_THROWS_WITH_AS(parse_graph_spec("[1, 2]"), Contains("root must be an object"),
                       input_error);
  CHECK_THROWS_WITH_AS(parse_graph_spec("{nope"), Contains("not valid JSON"), input_error);

  std::string base = R"({
    "vertices": ["a", "b"],
    "colors": [{"name": "c1", "alpha": 1}],
    "edges": [{"from": "a", "to": "b", "color": "COLOR", "beta": 1},
              {"from": "b", "to": "a", "color": "c1", "beta": 1}],
    "x0": "X0"
  })";
  std::string bad_color = base;
  bad_color.replace(bad_color.find("COLOR"), 5, "c9");
  bad_color.replace(bad_color.find("X0"), 2, "a");
  CHECK_THROWS_WITH_AS(parse_graph_spec(bad_color), Contains("unknown color 'c9'"), input_error);

  std::string bad_start = base;
  bad_start.replace(bad_start.find("COLOR"), 5, "c1");
  bad_start.replace(bad_start.find("X0"), 2, "z");
  CHECK_THROWS_WITH_AS(parse_graph_spec(bad_start), Contains("unknown state label 'z'"),
                       input_error);

  std::string dup = R"({
    "vertices": ["a", "b"],
    "colors": [{"name": "c1", "alpha": 1}, {"name": "c1", "alpha": 2}],
    "edges": [{"from": "a", "to": "b", "color": "c1", "beta": 1}],
    "x0": "a"
  })";
  CHECK_THROWS_WITH_AS(parse_graph_spec(dup), Contains("duplicate color \"c1\""), input_error);
}

TEST_CASE("walk CSV files round-trip and reject malformed rows") {
  graph_spec four = load_graph_spec(kData + "/cerrw4.json");
  const state_space& sp = four.graph.sp;

  path p{0, {1, 0, 2, 0, 1}};
  std::string tmp = write_tmp("walk.csv", "");
  save_walk_csv(p, sp, tmp);
  CHECK_EQ(read_file(tmp), "step,state\n1,b\n2,a\n3,c\n4,a\n5,b\n");
  CHECK_EQ(load_steps_csv(tmp, sp), p.steps);
  std::remove(tmp.c_str());

  std::string empty = write_tmp("empty.csv", "");
  CHECK_THROWS_WITH_AS(load_steps_csv(empty, sp), Contains("first line must be the header"),
                       input_error);
  std::remove(empty.c_str());

  std::string header = write_tmp("header.csv", "time,state\n1,a\n");
  CHECK_THROWS_WITH_AS(load_steps_csv(header, sp),
                       Contains("must be the header \"step,state\""), input_error);
  std::remove(header.c_str());

  std::string badnum = write_tmp("badnum.csv", "step,state\nx,a\n");
  CHECK_THROWS_WITH_AS(load_steps_csv(badnum, sp), Contains("bad step number"), input_error);
  std::remove(badnum.c_str());

  std::string gap = write_tmp("gap.csv", "step,state\n1,b\n3,a\n");
  CHECK_THROWS_WITH_AS(load_steps_csv(gap, sp), Contains("steps must run 1..n, got 3"),
                       input_error);
  std::remove(gap.c_str());

  std::string label = write_tmp("label.csv", "step,state\n1,z\n");
  CHECK_THROWS_WITH_AS(load_steps_csv(label, sp), Contains("unknown state label 'z'"),
                       input_error);
  std::remove(label.c_str());
}

TEST_CASE("inline walk strings parse with trimming") {
  graph_spec four = load_graph_spec(kData + "/cerrw4.json");
  const state_space& sp = four.graph.sp;

  CHECK_EQ(parse_steps("b,a,b", sp), std::vector<state>{1, 0, 1});
  CHECK_EQ(parse_steps(" b , a ", sp), std::vector<state>{1, 0});
  CHECK_THROWS_WITH_AS(parse_steps("", sp), Contains("walk string is empty"), input_error);
  CHECK_THROWS_WITH_AS(parse_steps("b,,a", sp), Contains("empty label in walk string"),
                       input_error);
  CHECK_THROWS_WITH_AS(parse_steps("b,q", sp), Contains("unknown state label 'q'"), input_error);
}

TEST_CASE("undirected view merges directed edge pairs") {
  graph_spec tri = load_graph_spec(kData + "/triangle_errw.json");
  errw_params par = errw_view(tri);
  CHECK_EQ(par.sp.size(), 3);
  REQUIRE_EQ(par.edges.size(), 3);
  std::set<std::pair<state, state>> seen;
  for (const auto& [u, v, w] : par.edges) {
    CHECK(u <= v);
    CHECK_EQ(w, rat(1));
    seen.emplace(u, v);
  }
  std::set<std::pair<state, state>> want{{0, 1}, {0, 2}, {1, 2}};
  CHECK_EQ(seen, want);

  graph_spec lop = parse_graph_spec(R"({
    "vertices": ["a", "b"],
    "colors": [{"name": "c1", "alpha": 1}],
    "edges": [{"from": "a", "to": "b", "color": "c1", "beta": 1},
              {"from": "b", "to": "a", "color": "c1", "beta": 2}],
    "x0": "a"
  })");
  CHECK_THROWS_WITH_AS(errw_view(lop), Contains("two different weights"), input_error);

  // cerrw4 weights a->c and c->a disagree, so it has no undirected reading
  graph_spec four = load_graph_spec(kData + "/cerrw4.json");
  CHECK_THROWS_AS(errw_view(four), input_error);
}

TEST_CASE("hoppe view aggregates row color mass and base rows") {
  graph_spec uni = load_graph_spec(kData + "/hoppe_uniform3.json");
  hoppe_params hp = hoppe_view(uni);
  REQUIRE_EQ(hp.alpha.size(), 3);
  for (state i = 0; i < 3; ++i) {
    CHECK_EQ(hp.alpha[i], rat(1));
    for (state j = 0; j < 3; ++j) CHECK_EQ(hp.q[i][j], rat(1, 3));
  }

  // row a of cerrw4 carries colors c1 (alpha 1) and c2 (alpha 3/2) with
  // betas 1, 2, 1/2 toward b, c, d
  graph_spec four = load_graph_spec(kData + "/cerrw4.json");
  hoppe_params hf = hoppe_view(four);
  CHECK_EQ(hf.alpha[0], rat(5, 2));
  CHECK_EQ(hf.q[0][0], rat(0));
  CHECK_EQ(hf.q[0][1], rat(2, 7));
  CHECK_EQ(hf.q[0][2], rat(4, 7));
  CHECK_EQ(hf.q[0][3], rat(1, 7));

  graph_spec sink = parse_graph_spec(R"({
    "vertices": ["a", "b"],
    "colors": [{"name": "c1", "alpha": 1}],
    "edges": [{"from": "a", "to": "b", "color": "c1", "beta": 1}],
    "x0": "a"
  })");
  CHECK_THROWS_WITH_AS(hoppe_view(sink), Contains("vertex b has no outgoing edge"), input_error);
}

TEST_CASE("table files configure base generator, overrides, and sufficiency") {
  std::string text = R"({
    "states": ["x", "y"],
    "x0": "y",
    "base": "uniform",
    "declared": "last-and-counts",
    "entries": [{"after": "y", "dist": ["1/4", "3/4"]},
                {"after": "", "dist": ["1/3", "2/3"]}]
  })";
  table_file tf = parse_table_file(text);
  CHECK_EQ(tf.x0, 1);
  CHECK_EQ(tf.scheme->space().size(), 2);
  CHECK_EQ(tf.scheme->declared_sufficiency(), sufficiency::last_and_counts);
  std::vector<rat> root_override{rat(1, 3), rat(2, 3)};
  CHECK_EQ(next_distribution(*tf.scheme, path{1, {}}), root_override);
  std::vector<rat> after_y{rat(1, 4), rat(3, 4)};
  CHECK_EQ(next_distribution(*tf.scheme, path{1, {1}}), after_y);
  std::vector<rat> uniform{rat(1, 2), rat(1, 2)};
  CHECK_EQ(next_distribution(*tf.scheme, path{1, {0}}), uniform);

  std::string tmp = write_tmp("table.json", text);
  table_file loaded = load_table_file(tmp);
  CHECK_EQ(loaded.x0, 1);
  CHECK_EQ(next_distribution(*loaded.scheme, path{1, {}}), root_override);
  std::remove(tmp.c_str());

  // a summary-hashed base gives equal rows on count-equivalent histories
  std::string hashed = R"({
    "states": ["x", "y"],
    "x0": "x",
    "seed": 9,
    "base": "hashed-summary",
    "declared": "last-and-counts"
  })";
  table_file hs = parse_table_file(hashed);
  path h1{0, {0, 1, 0}};
  path h2{0, {1, 0, 0}};
  REQUIRE(is_equivalent(2, h1, h2));
  CHECK_EQ(next_distribution(*hs.scheme, h1), next_distribution(*hs.scheme, h2));

  std::string bad_base = text;
  bad_base.replace(bad_base.find("uniform"), 7, "nope");
  CHECK_THROWS_WITH_AS(parse_table_file(bad_base), Contains("unknown base generator"),
                       input_error);

  std::string bad_declared = text;
  bad_declared.replace(bad_declared.find("last-and-counts"), 15, "whatever");
  CHECK_THROWS_WITH_AS(parse_table_file(bad_declared), Contains("unknown declared sufficiency"),
                       input_error);

  std::string short_dist = text;
  short_dist.replace(short_dist.find("[\"1/4\", \"3/4\"]"), 14, "[\"1/4\"]");
  CHECK_THROWS_WITH_AS(parse_table_file(short_dist), Contains("one weight per state"),
                       input_error);
}

TEST_CASE("loading a missing file names it") {
  CHECK_THROWS_WITH_AS(load_graph_spec("spec_cli_no_such_file.json"),
                       Contains("spec_cli_no_such_file.json"), input_error);
  CHECK_THROWS_WITH_AS(load_table_file("spec_cli_no_such_table.json"),
                       Contains("spec_cli_no_such_table.json"), input_error);
}

TEST_CASE("cli help and argument errors") {
  cli_result help = run_cli("--help");
  CHECK_EQ(help.exit_code, 0);
  CHECK_MESSAGE(has(help.out, "reinforced random walks"), help.out);
  CHECK_MESSAGE(has(help.out, "simulate"), help.out);
  CHECK_MESSAGE(has(help.out, "dummy-state completions"), help.out);

  cli_result none = run_cli("");
  CHECK_EQ(none.exit_code, 2);
  CHECK_MESSAGE(has(none.out, "subcommand is required"), none.out);

  cli_result nomode = run_cli("check --spec " + kData + "/cerrw4.json");
  CHECK_EQ(nomode.exit_code, 2);
  CHECK_MESSAGE(has(nomode.out, "--mode is required"), nomode.out);

  cli_result bogus = run_cli("simulate --bogus");
  CHECK_EQ(bogus.exit_code, 2);
}

TEST_CASE("cli brute check flags the growing scheme with exact witnesses") {
  cli_result r = run_cli("check --scheme growing-uniform --mode brute --max-len 5");
  CHECK_EQ(r.exit_code, 1);
  CHECK_MESSAGE(has(r.out, "growing-uniform(capacity 7)"), r.out);
  CHECK_MESSAGE(has(r.out, "VERDICT: violated"), r.out);
  CHECK_MESSAGE(has(r.out,
                    "witness class-pair: p(0, 1, 1, 3, 1) = 1/24 differs from "
                    "p(0, 1, 3, 1, 1) = 0 within one equivalence class"),
                r.out);
  CHECK_MESSAGE(has(r.out, "p(0, 1, 2, 3, 1, 3) = 1/120 differs from p(0, 1, 3, 1, 2, 3) = 0"),
                r.out);
  CHECK_MESSAGE(has(r.out, "coverage: 19607 histories, 16745 classes, 2862 pairs"), r.out);
}

TEST_CASE("cli colored and partition checks give verdicts and exit codes") {
  cli_result ok = run_cli("check --spec " + kData + "/cerrw4.json --mode colored");
  CHECK_EQ(ok.exit_code, 0);
  CHECK_MESSAGE(has(ok.out, "VERDICT: holds"), ok.out);
  CHECK_MESSAGE(has(ok.out, "1728 patterns"), ok.out);

  cli_result part = run_cli("check --spec " + kData + "/cerrw4.json --mode partition");
  CHECK_EQ(part.exit_code, 0);
  CHECK_MESSAGE(has(part.out, "group 0: states {a, b} colors {c1, c2}"), part.out);
  CHECK_MESSAGE(has(part.out, "VERDICT: holds"), part.out);

  cli_result bad = run_cli("check --spec " + kData + "/overlap3.json --mode partition");
  CHECK_EQ(bad.exit_code, 1);
  CHECK_MESSAGE(has(bad.out, "group 0: states {a} colors {c1, c2}"), bad.out);
  CHECK_MESSAGE(has(bad.out, "VERDICT: violated"), bad.out);

  cli_result prod = run_cli("check --spec " + kData + "/overlap3.json --mode colored");
  CHECK_EQ(prod.exit_code, 1);
  CHECK_MESSAGE(has(prod.out, "VERDICT: violated"), prod.out);
}

TEST_CASE("cli simulate is seed-deterministic and writes loadable CSV") {
  std::string args = "simulate --spec " + kData + "/cerrw4.json --steps 30 --seed 7";
  cli_result a = run_cli(args, false);
  cli_result b = run_cli(args, false);
  CHECK_EQ(a.exit_code, 0);
  CHECK_EQ(a.out, b.out);
  CHECK_MESSAGE(has(a.out, "step,state\n1,"), a.out);

  cli_result c = run_cli("simulate --spec " + kData + "/cerrw4.json --steps 30 --seed 8", false);
  CHECK_NE(a.out, c.out);

  std::string tmp = "spec_cli_tmp_sim.csv";
  cli_result d = run_cli(args + " --out " + tmp);
  CHECK_EQ(d.exit_code, 0);
  CHECK_MESSAGE(has(d.out, "walk written to"), d.out);
  graph_spec four = load_graph_spec(kData + "/cerrw4.json");
  std::vector<state> steps = load_steps_csv(tmp, four.graph.sp);
  CHECK_EQ(steps.size(), 30);
  std::remove(tmp.c_str());
}

TEST_CASE("cli posterior reports the conjugate update and writes a spec") {
  std::string args = "posterior --spec " + kData + "/cerrw4.json --walk b,a,c,a,b";
  cli_result r = run_cli(args);
  CHECK_EQ(r.exit_code, 0);
  CHECK_MESSAGE(has(r.out, "alpha[c1] = 1 -> 4"), r.out);
  CHECK_MESSAGE(has(r.out, "alpha[c2] = 3/2 -> 5/2"), r.out);
  CHECK_MESSAGE(has(r.out, "beta[a -> b] = 1 -> 3"), r.out);
  CHECK_MESSAGE(has(r.out, "start: b"), r.out);
  CHECK_MESSAGE(has(r.out, "predictive from b: a=8/13 c=5/13"), r.out);

  std::string tmp = "spec_cli_tmp_post.json";
  cli_result w = run_cli(args + " --out " + tmp);
  CHECK_EQ(w.exit_code, 0);
  graph_spec post = load_graph_spec(tmp);
  std::vector<rat> want_alpha{rat(4), rat(5, 2), rat(2), rat(1, 2)};
  CHECK_EQ(post.graph.alpha, want_alpha);
  CHECK_EQ(post.x0, 1);
  std::size_t ab = post.graph.edge_between(0, 1);
  CHECK_EQ(post.graph.edges[ab].beta, rat(3));
  std::remove(tmp.c_str());

  cli_result bad = run_cli("posterior --spec " + kData + "/cerrw4.json --walk a,a");
  CHECK_EQ(bad.exit_code, 2);
  CHECK_MESSAGE(has(bad.out, "no such edge"), bad.out);
}

TEST_CASE("cli rejects bad specs and walks with exit code 2") {
  std::string sink = write_tmp("sink.json", R"({
    "vertices": ["a", "b"],
    "colors": [{"name": "c1", "alpha": 1}],
    "edges": [{"from": "a", "to": "b", "color": "c1", "beta": 1}],
    "x0": "a"
  })");
  cli_result r = run_cli("simulate --spec " + sink + " --steps 3 --seed 1");
  CHECK_EQ(r.exit_code, 2);
  CHECK_MESSAGE(has(r.out, "sink vertex \"b\" has no outgoing edge"), r.out);
  std::remove(sink.c_str());

  std::string gap = write_tmp("gapwalk.csv", "step,state\n1,b\n3,a\n");
  cli_result g = run_cli("posterior --spec " + kData + "/cerrw4.json --path " + gap);
  CHECK_EQ(g.exit_code, 2);
  CHECK_MESSAGE(has(g.out, "steps must run 1..n, got 3"), g.out);
  std::remove(gap.c_str());

  std::string mangled = write_tmp("mangled.json", "{nope");
  cli_result m = run_cli("check --spec " + mangled + " --mode a");
  CHECK_EQ(m.exit_code, 2);
  CHECK_MESSAGE(has(m.out, "error:"), m.out);
  std::remove(mangled.c_str());
}

TEST_CASE("cli dummy marginal and gibbs report the completion table") {
  std::string base = "dummy --spec " + kData + "/dummy_ab.json --walk b,a,b";
  cli_result m = run_cli(base + " --mode marginal");
  CHECK_EQ(m.exit_code, 0);
  CHECK_MESSAGE(has(m.out, "m = {a*b:0, b*a:0}  N = 1  p* = 1/4  representative (a, b, a, b)"),
                m.out);
  CHECK_MESSAGE(
      has(m.out,
          "m = {a*b:2, b*a:1}  N = 1  p* = 1/4  representative (a, a*b, b, b*a, a, a*b, b)"),
      m.out);
  CHECK_MESSAGE(has(m.out, "|A| = 8"), m.out);
  CHECK_MESSAGE(has(m.out, "p = 1"), m.out);

  cli_result g1 = run_cli(base + " --mode gibbs --sweeps 40 --seed 3");
  cli_result g2 = run_cli(base + " --mode gibbs --sweeps 40 --seed 3");
  CHECK_EQ(g1.exit_code, 0);
  CHECK_EQ(g1.out, g2.out);
  CHECK_MESSAGE(has(g1.out, "# gibbs sweeps 40 (+ burn-in 30), seed 3"), g1.out);
  CHECK_MESSAGE(has(g1.out, "(a, b, a, b)  count 14  freq 0.35"), g1.out);
}

TEST_CASE("cli recurrence prints per-replicate sums and a csv trace") {
  cli_result r = run_cli("recurrence --spec " + kData +
                         "/hoppe_uniform3.json --steps 200 --replicates 2 --seed 5");
  CHECK_EQ(r.exit_code, 0);
  CHECK_MESSAGE(has(r.out, "(diagnostic, not proof)"), r.out);
  CHECK_MESSAGE(has(r.out, "replicate 0: S_200 = 73.1211, returns to start = 66"), r.out);
  CHECK_MESSAGE(has(r.out, "replicate 1: S_200 = 31.8015, returns to start = 25"), r.out);
  CHECK_MESSAGE(has(r.out, "step,rep0,rep1"), r.out);
  CHECK_MESSAGE(has(r.out, "1,0.333333,0.333333"), r.out);
}

TEST_CASE("cli check runs table files and flags a planted override") {
  std::string clean = write_tmp("tab_clean.json", R"({
    "states": ["x", "y"],
    "x0": "x",
    "seed": 9,
    "base": "hashed-summary",
    "declared": "last-and-counts"
  })");
  cli_result ok = run_cli("check --table " + clean + " --scheme table --mode a --max-len 4");
  CHECK_EQ(ok.exit_code, 0);
  CHECK_MESSAGE(has(ok.out, "VERDICT: holds"), ok.out);
  CHECK_MESSAGE(has(ok.out, "30 histories, 24 classes, 6 pairs"), ok.out);
  std::remove(clean.c_str());

  // override one history of the pair (x,y,x) ~ (y,x,x); its class partner
  // keeps the uniform base row, so the one-step condition must fail
  std::string planted = write_tmp("tab_planted.json", R"({
    "states": ["x", "y"],
    "x0": "x",
    "base": "uniform",
    "entries": [{"after": "x,y,x", "dist": ["1/4", "3/4"]}]
  })");
  cli_result bad = run_cli("check --table " + planted + " --scheme table --mode a --max-len 4");
  CHECK_EQ(bad.exit_code, 1);
  CHECK_MESSAGE(has(bad.out, "VERDICT: violated"), bad.out);
  CHECK_MESSAGE(has(bad.out, "witness"), bad.out);
  std::remove(planted.c_str());

  std::string broken = write_tmp("tab_broken.json", R"({
    "states": ["x", "y"],
    "x0": "x",
    "base": "nope"
  })");
  cli_result err = run_cli("check --table " + broken + " --scheme table --mode a");
  CHECK_EQ(err.exit_code, 2);
  CHECK_MESSAGE(has(err.out, "unknown base generator"), err.out);
  std::remove(broken.c_str());
}
