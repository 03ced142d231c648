// rrwalk: simulate reinforced random walks, check Markov exchangeability,
// update conjugate posteriors, trace recurrence diagnostics, and work with
// dummy-state completions.  Exit codes: 0 ok/holds, 1 violated, 2 invalid
// input, 3 budget or resource exhausted.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrw/bayes.hpp"
#include "rrw/check.hpp"
#include "rrw/core.hpp"
#include "rrw/dummy.hpp"
#include "rrw/errors.hpp"
#include "rrw/recurrence.hpp"
#include "rrw/rng.hpp"
#include "rrw/scheme.hpp"
#include "rrw/schemes.hpp"
#include "rrw/spec_io.hpp"

using namespace rrw;

namespace {

constexpr const char* kVersion = "rrwalk 0.1.0";

struct options {
  std::string command;
  std::string spec_file;
  std::string table_path;
  std::string scheme_kind = "colored";
  std::string mode;
  std::string out_file;
  std::string path_file;
  std::string walk_inline;
  int steps = 1000;
  int max_len = 5;
  int replicates = 1;
  int sweeps = 2000;
  int capacity = 0;
  int witness_cap = 64;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumBudget;
  bool numeric = false;
};

struct built_scheme {
  std::unique_ptr<scheme> s;
  state x0 = 0;
  std::string describe;
};

built_scheme build_scheme(const options& o) {
  if (o.scheme_kind == "growing-uniform") {
    int cap = o.capacity > 0 ? o.capacity : o.max_len + 2;
    return {std::make_unique<growing_uniform_scheme>(cap), 0,
            "growing-uniform(capacity " + std::to_string(cap) + ")"};
  }
  if (o.scheme_kind == "table") {
    if (o.table_path.empty()) throw input_error("--table FILE is required for --scheme table");
    table_file tf = load_table_file(o.table_path);
    return {std::move(tf.scheme), tf.x0, "table(" + o.table_path + ")"};
  }
  if (o.spec_file.empty())
    throw input_error("--spec FILE is required for --scheme " + o.scheme_kind);
  graph_spec gs = load_graph_spec(o.spec_file);
  if (o.scheme_kind == "colored") {
    for (state i = 0; i < gs.graph.sp.size(); ++i)
      if (gs.graph.out_degree_zero(i))
        throw input_error("sink vertex \"" + gs.graph.sp.label(i) + "\" has no outgoing edge");
    return {std::make_unique<colored_scheme>(gs.graph), gs.x0, "colored(" + o.spec_file + ")"};
  }
  if (o.scheme_kind == "hoppe")
    return {std::make_unique<hoppe_scheme>(hoppe_view(gs)), gs.x0, "hoppe(" + o.spec_file + ")"};
  if (o.scheme_kind == "errw")
    return {std::make_unique<errw_scheme>(errw_view(gs)), gs.x0, "errw(" + o.spec_file + ")"};
  throw input_error("unknown scheme kind \"" + o.scheme_kind +
                    "\" (colored, hoppe, errw, growing-uniform, table)");
}

std::vector<state> observed_steps(const options& o, const state_space& sp) {
  if (!o.path_file.empty() && !o.walk_inline.empty())
    throw input_error("give either --path or --walk, not both");
  if (!o.path_file.empty()) return load_steps_csv(o.path_file, sp);
  if (!o.walk_inline.empty()) return parse_steps(o.walk_inline, sp);
  return {};
}

int verdict_exit(verdict v) {
  switch (v) {
    case verdict::holds: return 0;
    case verdict::violated: return 1;
    case verdict::inconclusive_budget: return 3;
  }
  return 2;
}

void print_report(const check_report& rep, const options& o, const std::string& what) {
  std::cout << "# " << kVersion << "\n";
  std::cout << "# mode " << o.mode << ", " << what << ", max_len " << rep.max_len << ", budget "
            << o.budget << ", arithmetic " << (rep.numeric ? "float (1e-9 relative)" : "exact")
            << "\n";
  if (!rep.note.empty()) std::cout << "# " << rep.note << "\n";
  std::cout << "VERDICT: " << verdict_name(rep.v) << "\n";
  for (const auto& w : rep.witnesses) std::cout << "witness " << w.kind << ": " << w.text << "\n";
  std::cout << "coverage: " << rep.cov.histories << " histories, " << rep.cov.classes
            << " classes, " << rep.cov.pairs << " pairs, " << rep.cov.patterns << " patterns, "
            << rep.cov.evaluations << " predictive evaluations\n";
}

int cmd_simulate(const options& o) {
  built_scheme b = build_scheme(o);
  if (o.steps < 0) throw input_error("--steps must be nonnegative");
  path p = simulate(*b.s, b.x0, o.steps, o.seed);
  const state_space& sp = b.s->space();

  std::ostream& info = o.out_file.empty() ? std::cerr : std::cout;
  info << "# " << kVersion << "\n";
  info << "# simulate " << b.describe << ", steps " << o.steps << ", seed " << o.seed << "\n";
  std::vector<int> visits(static_cast<std::size_t>(sp.size()), 0);
  for (int t = 0; t <= p.length(); ++t) ++visits[static_cast<std::size_t>(p.at(t))];
  info << "visits:";
  for (state i = 0; i < sp.size(); ++i)
    info << " " << sp.label(i) << "=" << visits[static_cast<std::size_t>(i)];
  info << "\n";

  estimated_matrix est = estimate_transition_matrix(p, sp);
  info << "estimated transition matrix (last column is the boundary):\n";
  for (state i = 0; i < est.enlarged.size(); ++i) {
    info << "  " << est.enlarged.label(i) << ":";
    for (state j = 0; j < est.enlarged.size(); ++j) {
      const rat& v = est.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v != 0) info << " " << est.enlarged.label(j) << "=" << format_rational(v);
    }
    info << "\n";
  }

  if (o.out_file.empty()) {
    std::cout << "step,state\n";
    for (int t = 1; t <= p.length(); ++t)
      std::cout << t << "," << sp.label(p.steps[static_cast<std::size_t>(t) - 1]) << "\n";
  } else {
    save_walk_csv(p, sp, o.out_file);
    std::cout << "walk written to " << o.out_file << "\n";
  }
  return 0;
}

int cmd_check(const options& o) {
  check_options opt;
  opt.max_len = o.max_len;
  opt.budget = o.budget;
  opt.numeric = o.numeric;
  opt.witness_cap = o.witness_cap;
  opt.probe_max = o.max_len;

  if (o.mode == "partition") {
    if (o.spec_file.empty()) throw input_error("--spec FILE is required for --mode partition");
    graph_spec gs = load_graph_spec(o.spec_file);
    color_partition part = analyze_partition(gs.graph);
    std::cout << "# " << kVersion << "\n";
    for (std::size_t m = 0; m < part.group_states.size(); ++m) {
      std::cout << "group " << m << ": states {";
      for (std::size_t k = 0; k < part.group_states[m].size(); ++k)
        std::cout << (k ? ", " : "") << gs.graph.sp.label(part.group_states[m][k]);
      std::cout << "} colors {";
      for (std::size_t k = 0; k < part.group_colors[m].size(); ++k)
        std::cout << (k ? ", " : "")
                  << gs.graph.color_names[static_cast<std::size_t>(part.group_colors[m][k])];
      std::cout << "}\n";
    }
    std::cout << "VERDICT: " << (part.partitioned ? "holds" : "violated") << "\n";
    return part.partitioned ? 0 : 1;
  }

  if (o.mode == "colored") {
    if (o.spec_file.empty()) throw input_error("--spec FILE is required for --mode colored");
    graph_spec gs = load_graph_spec(o.spec_file);
    check_report rep = check_colored_condition(gs.graph, gs.x0, opt);
    print_report(rep, o, "colored(" + o.spec_file + ")");
    return verdict_exit(rep.v);
  }

  if (o.mode == "linear") {
    if (o.spec_file.empty()) throw input_error("--spec FILE is required for --mode linear");
    graph_spec gs = load_graph_spec(o.spec_file);
    hoppe_params hp = hoppe_view(gs);
    const int K = hp.sp.size();
    linear_predictive pi = [hp](state u, const std::vector<std::uint32_t>& row, state i) {
      rat den = hp.alpha[static_cast<std::size_t>(i)];
      for (std::uint32_t c : row) den += c;
      rat num = hp.alpha[static_cast<std::size_t>(i)] *
                    hp.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(u)] +
                row[static_cast<std::size_t>(u)];
      return num / den;
    };
    check_report rep = check_linear_condition(pi, K, opt);
    print_report(rep, o, "hoppe rows of " + o.spec_file + ", probe grid 0.." +
                             std::to_string(opt.probe_max));
    return verdict_exit(rep.v);
  }

  built_scheme b = build_scheme(o);
  check_report rep;
  if (o.mode == "brute") {
    rep = brute_force_markov_exchangeable(*b.s, b.x0, opt);
  } else if (o.mode == "a") {
    rep = check_condition_a(*b.s, b.x0, opt);
  } else if (o.mode == "b") {
    rep = check_condition_b(*b.s, b.x0, opt);
  } else {
    throw input_error("unknown mode \"" + o.mode +
                      "\" (brute, a, b, linear, colored, partition)");
  }
  print_report(rep, o, b.describe);
  return verdict_exit(rep.v);
}

int cmd_posterior(const options& o) {
  if (o.spec_file.empty()) throw input_error("--spec FILE is required");
  graph_spec gs = load_graph_spec(o.spec_file);
  path p{gs.x0, observed_steps(o, gs.graph.sp)};

  partitioned_prior prior = make_prior(gs.graph, gs.x0);
  partitioned_prior post = posterior_update(prior, p);

  std::cout << "# " << kVersion << "\n";
  std::cout << "# posterior after " << p.length() << " observed steps\n";
  for (std::size_t c = 0; c < post.graph.color_names.size(); ++c)
    std::cout << "alpha[" << post.graph.color_names[c]
              << "] = " << format_rational(gs.graph.alpha[c]) << " -> "
              << format_rational(post.graph.alpha[c]) << "\n";
  for (std::size_t e = 0; e < post.graph.edges.size(); ++e) {
    const colored_edge& ed = post.graph.edges[e];
    std::cout << "beta[" << post.graph.sp.label(ed.from) << " -> " << post.graph.sp.label(ed.to)
              << "] = " << format_rational(gs.graph.edges[e].beta) << " -> "
              << format_rational(ed.beta) << "\n";
  }
  std::cout << "start: " << post.graph.sp.label(post.start) << "\n";

  transition_counts fresh(post.graph.sp.size(), post.start);
  std::vector<rat> pred = colored_predictive(post.graph, fresh, post.start);
  std::cout << "predictive from " << post.graph.sp.label(post.start) << ":";
  for (state j = 0; j < post.graph.sp.size(); ++j)
    if (pred[static_cast<std::size_t>(j)] != 0)
      std::cout << " " << post.graph.sp.label(j) << "="
                << format_rational(pred[static_cast<std::size_t>(j)]);
  std::cout << "\n";

  if (!o.out_file.empty()) {
    graph_spec updated;
    updated.graph = post.graph;
    updated.x0 = post.start;
    updated.dummies = gs.dummies;
    save_graph_spec(updated, o.out_file);
    std::cout << "updated spec written to " << o.out_file << "\n";
  }
  return 0;
}

int cmd_recurrence(const options& o) {
  built_scheme b = build_scheme(o);
  if (o.steps < 1) throw input_error("--steps must be at least 1");
  if (o.replicates < 1) throw input_error("--replicates must be at least 1");

  std::vector<recurrence_trace> traces;
  rng64 root(o.seed);
  for (int r = 0; r < o.replicates; ++r)
    traces.push_back(
        recurrence_sum_trace(*b.s, b.x0, o.steps, root.split(static_cast<std::uint64_t>(r)).origin()));

  std::cout << "# " << kVersion << "\n";
  std::cout << "# recurrence " << b.describe << ", steps " << o.steps << ", replicates "
            << o.replicates << ", seed " << o.seed << " (" << traces.front().tag << ")\n";
  for (int r = 0; r < o.replicates; ++r) {
    const auto& tr = traces[static_cast<std::size_t>(r)];
    std::cout << "replicate " << r << ": S_" << o.steps << " = " << tr.partial_sums.back()
              << ", returns to start = " << tr.returns.size() << "\n";
  }

  std::ostream* csv = &std::cout;
  std::ofstream file;
  if (!o.out_file.empty()) {
    file.open(o.out_file);
    if (!file) throw resource_error("cannot write trace file " + o.out_file);
    csv = &file;
  }
  *csv << "step";
  for (int r = 0; r < o.replicates; ++r) *csv << ",rep" << r;
  *csv << "\n";
  for (int n = 0; n < o.steps; ++n) {
    *csv << (n + 1);
    for (int r = 0; r < o.replicates; ++r)
      *csv << "," << traces[static_cast<std::size_t>(r)].partial_sums[static_cast<std::size_t>(n)];
    *csv << "\n";
  }
  if (!o.out_file.empty()) std::cout << "trace written to " << o.out_file << "\n";
  return 0;
}

int cmd_dummy(const options& o) {
  if (o.spec_file.empty()) throw input_error("--spec FILE is required");
  graph_spec gs = load_graph_spec(o.spec_file);
  augmented_graph aug = augment(gs.graph, gs.dummies);
  path x{gs.x0, observed_steps(o, gs.graph.sp)};

  std::cout << "# " << kVersion << "\n";
  if (o.mode == "marginal") {
    auto classes = completion_classes(aug, x, o.budget);
    colored_scheme cs(aug.star);
    bigint total_size = 0;
    rat marginal = 0;
    std::cout << "# completion classes of " << render_path(gs.graph.sp, x) << "\n";
    for (const auto& cc : classes) {
      total_size += cc.size;
      rat pstar = path_probability(cs, cc.representative);
      marginal += rat(cc.size) * pstar;
      std::cout << "m = {";
      for (int d = 0; d < aug.n_dummies(); ++d)
        std::cout << (d ? ", " : "") << aug.star.sp.label(aug.n_base + d) << ":"
                  << cc.m[static_cast<std::size_t>(d)];
      std::cout << "}  N = " << cc.size.str() << "  p* = " << format_rational(pstar)
                << "  representative " << render_path(aug.star.sp, cc.representative) << "\n";
    }
    std::cout << "|A| = " << total_size.str() << "\n";
    std::cout << "p = " << format_rational(marginal) << "\n";
    return 0;
  }
  if (o.mode == "gibbs") {
    gibbs_result res = gibbs_successors(aug, x, o.sweeps, o.seed);
    std::cout << "# gibbs sweeps " << o.sweeps << " (+ burn-in " << res.burn_in << "), seed "
              << o.seed << "\n";
    for (const auto& [choices, count] : res.visits) {
      path comp = complete(aug, x, choices);
      std::cout << render_path(aug.star.sp, comp) << "  count " << count << "  freq "
                << (static_cast<double>(count) / static_cast<double>(res.recorded)) << "\n";
    }
    return 0;
  }
  throw input_error("unknown mode \"" + o.mode + "\" (marginal, gibbs)");
}

}  // namespace

int main(int argc, char** argv) {
  options o;
  CLI::App app{std::string(kVersion) +
               " -- reinforced random walks: simulation, exchangeability checks, conjugate "
               "posteriors, recurrence diagnostics, dummy-state completions"};
  app.require_subcommand(1);

  auto add_scheme_flags = [&](CLI::App* cmd) {
    cmd->add_option("--spec", o.spec_file, "graph spec file (JSON)");
    cmd->add_option("--table", o.table_path, "table scheme file (JSON)");
    cmd->add_option("--scheme", o.scheme_kind,
                    "scheme kind: colored, hoppe, errw, growing-uniform, table");
    cmd->add_option("--states", o.capacity, "label capacity for growing-uniform");
  };
  auto add_walk_flags = [&](CLI::App* cmd) {
    cmd->add_option("--path", o.path_file, "observed walk file (CSV step,state)");
    cmd->add_option("--walk", o.walk_inline, "observed walk inline, e.g. \"b,a,b\"");
  };

  CLI::App* sim = app.add_subcommand("simulate", "simulate a walk and write it as CSV");
  add_scheme_flags(sim);
  sim->add_option("--steps", o.steps, "number of steps");
  sim->add_option("--seed", o.seed, "random seed");
  sim->add_option("--out", o.out_file, "output CSV file (stdout when absent)");

  CLI::App* chk = app.add_subcommand("check", "run an exchangeability checker");
  add_scheme_flags(chk);
  chk->add_option("--mode", o.mode, "brute, a, b, linear, colored, partition")->required();
  chk->add_option("--max-len", o.max_len, "history length bound (probe bound for linear)");
  chk->add_option("--budget", o.budget, "string enumeration budget");
  chk->add_option("--witness-cap", o.witness_cap, "max witnesses reported");
  chk->add_flag("--float", o.numeric, "float arithmetic with 1e-9 relative tolerance");

  CLI::App* pos = app.add_subcommand("posterior", "conjugate update from an observed walk");
  pos->add_option("--spec", o.spec_file, "graph spec file (JSON)");
  add_walk_flags(pos);
  pos->add_option("--out", o.out_file, "write the updated spec here");

  CLI::App* rec = app.add_subcommand("recurrence", "partial-sum recurrence diagnostic");
  add_scheme_flags(rec);
  rec->add_option("--steps", o.steps, "steps per replicate");
  rec->add_option("--replicates", o.replicates, "independent replicates");
  rec->add_option("--seed", o.seed, "root seed; replicate r uses stream split(r)");
  rec->add_option("--out", o.out_file, "trace CSV file (stdout when absent)");

  CLI::App* dum = app.add_subcommand("dummy", "dummy-state completions of an observed walk");
  dum->add_option("--spec", o.spec_file, "graph spec file with a dummies section");
  add_walk_flags(dum);
  dum->add_option("--mode", o.mode, "marginal or gibbs")->required();
  dum->add_option("--sweeps", o.sweeps, "gibbs sweeps after burn-in");
  dum->add_option("--seed", o.seed, "random seed");
  dum->add_option("--budget", o.budget, "completion enumeration budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o);
    if (chk->parsed()) return cmd_check(o);
    if (pos->parsed()) return cmd_posterior(o);
    if (rec->parsed()) return cmd_recurrence(o);
    if (dum->parsed()) return cmd_dummy(o);
    throw input_error("no command given");
  } catch (const resource_error& e) {
    std::cerr << "resource: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
