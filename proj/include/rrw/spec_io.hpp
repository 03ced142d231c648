#pragma once

// Graph spec files (JSON) and walk files (CSV).  Weights are parsed exactly:
// rational strings ("3/2"), decimal strings ("0.25"), or integral JSON
// numbers.  Non-integral JSON floats are rejected because a binary double is
// not the decimal the author wrote.

#include <memory>
#include <string>
#include <vector>

#include "rrw/core.hpp"
#include "rrw/dummy.hpp"
#include "rrw/schemes.hpp"

namespace rrw {

struct graph_spec {
  colored_graph graph;
  state x0 = 0;
  std::vector<dummy_placement> dummies;
};

graph_spec parse_graph_spec(const std::string& json_text);
std::string serialize_graph_spec(const graph_spec& gs);

graph_spec load_graph_spec(const std::string& file);
void save_graph_spec(const graph_spec& gs, const std::string& file);

// walk CSV: header "step,state", then rows k,label for k = 1..n.  The start
// state is not stored; it comes from the spec.
std::vector<state> load_steps_csv(const std::string& file, const state_space& sp);
void save_walk_csv(const path& p, const state_space& sp, const std::string& file);

// inline form: comma-separated labels, e.g. "b,a,b"
std::vector<state> parse_steps(const std::string& csv_labels, const state_space& sp);

// Table-scheme files: JSON with "states", "x0", a "base" generator
// ("uniform", "hashed-history", "hashed-summary" with optional "seed"),
// optional "declared" sufficiency, and optional "entries" overriding the
// distribution after specific step strings.
struct table_file {
  std::unique_ptr<table_scheme> scheme;
  state x0 = 0;
};

table_file parse_table_file(const std::string& json_text);
table_file load_table_file(const std::string& file);

// ERRW view of a spec: every directed edge (i, j, beta) becomes the
// undirected edge {i, j} with weight beta; when both directions appear their
// weights must agree.  Colors are ignored.
errw_params errw_view(const graph_spec& gs);

// Hoppe view of a spec: alpha_i is the total color weight leaving i and
// q_i(j) proportional to beta_{i,j}.  Every vertex needs an outgoing edge.
hoppe_params hoppe_view(const graph_spec& gs);

}  // namespace rrw
