#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rrw/scheme.hpp"

namespace rrw {

// ---------------------------------------------------------------------------
// Edge-reinforced random walk on an undirected weighted graph.  The predictive
// mass towards a neighbor is
//
//   (alpha_{ij} + T_{ij} + T_{ji}) / (alpha_{i.} + T_{i.} + T_{.i})
//
// so a loop traversal reinforces its edge by two.
// ---------------------------------------------------------------------------

struct errw_params {
  state_space sp;
  // undirected edges with positive weights; loops allowed; stored canonically
  // with from <= to and unique
  std::vector<std::tuple<state, state, rat>> edges;
};

class errw_scheme final : public scheme {
 public:
  explicit errw_scheme(errw_params par);

  const state_space& space() const override { return par_.sp; }
  sufficiency declared_sufficiency() const override { return sufficiency::last_and_counts; }
  void next_exact(const history_view& h, std::vector<rat>& out) const override;
  void next_float(const history_view& h, std::vector<double>& out) const override;

  void predict(const transition_counts& t, std::vector<rat>& out) const;
  void predict(const transition_counts& t, std::vector<double>& out) const;

  const errw_params& params() const { return par_; }

 private:
  template <class Num>
  void predict_impl(const transition_counts& t, std::vector<Num>& out) const;

  errw_params par_;
  std::vector<std::vector<std::pair<state, std::size_t>>> adj_;  // (neighbor, edge id)
  std::vector<rat> alpha_dot_;
  std::vector<double> alpha_f_, alpha_dot_f_;
};

std::vector<rat> errw_predictive(const errw_params& par, const transition_counts& t, state i);

// ---------------------------------------------------------------------------
// Hoppe-urn walk: an urn per state, (alpha_i q_i(j) + T_{ij}) / (alpha_i + T_{i.}).
// Only the current state's row of counts matters.
// ---------------------------------------------------------------------------

struct hoppe_params {
  state_space sp;
  std::vector<rat> alpha;           // per state, positive
  std::vector<std::vector<rat>> q;  // per state a base distribution over sp
};

class hoppe_scheme final : public scheme {
 public:
  explicit hoppe_scheme(hoppe_params par);

  const state_space& space() const override { return par_.sp; }
  sufficiency declared_sufficiency() const override { return sufficiency::last_and_row; }
  void next_exact(const history_view& h, std::vector<rat>& out) const override;
  void next_float(const history_view& h, std::vector<double>& out) const override;

  void predict(const transition_counts& t, std::vector<rat>& out) const;
  void predict(const transition_counts& t, std::vector<double>& out) const;

  const hoppe_params& params() const { return par_; }

 private:
  template <class Num>
  void predict_impl(const transition_counts& t, std::vector<Num>& out) const;

  hoppe_params par_;
  std::vector<double> alpha_f_;
  std::vector<std::vector<double>> aq_f_;  // alpha_i * q_i(j) mirrors
  std::vector<std::vector<rat>> aq_;
};

std::vector<rat> hoppe_predictive(const hoppe_params& par, const transition_counts& t, state i);

// ---------------------------------------------------------------------------
// Colored edge-reinforced walk.  Directed edges carry a color and a weight;
// a step from i to y of color c has mass
//
//   (alpha_c + T_{E_c}) / (alpha_{C(i)} + T_{C(i)})
//     * (beta_{iy} + T_{iy}) / (beta_{i,E_c} + T_{i,E_c})
//
// where E_c is every edge of color c anywhere in the graph, C(i) the colors
// leaving i.  Color counts couple different rows, which is the whole point.
// ---------------------------------------------------------------------------

struct colored_edge {
  state from = 0, to = 0;
  int color = 0;
  rat beta;
};

struct colored_graph {
  state_space sp;
  std::vector<std::string> color_names;
  std::vector<rat> alpha;  // per color, positive
  std::vector<colored_edge> edges;

  // derived by finalize()
  struct row_group {
    int color = 0;
    std::vector<std::size_t> edge_ids;  // out-edges of this row with that color
    rat beta_sum;
  };
  std::vector<std::vector<row_group>> rows;   // per state, groups sorted by color
  std::vector<std::vector<std::size_t>> e_c;  // per color: edge ids
  std::vector<std::vector<int>> c_of;         // per state: sorted distinct out-colors
  std::vector<rat> alpha_row;                 // per state: sum of alpha over c_of

  void finalize();  // builds the derived tables, validates
  int color_index(const std::string& name) const;
  // edge id of (i, j) or npos
  std::size_t edge_between(state i, state j) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  bool out_degree_zero(state i) const { return rows[static_cast<std::size_t>(i)].empty(); }
};

class colored_scheme final : public scheme {
 public:
  explicit colored_scheme(colored_graph g);

  const state_space& space() const override { return g_.sp; }
  sufficiency declared_sufficiency() const override { return sufficiency::last_and_counts; }
  void next_exact(const history_view& h, std::vector<rat>& out) const override;
  void next_float(const history_view& h, std::vector<double>& out) const override;

  void predict(const transition_counts& t, std::vector<rat>& out) const;
  void predict(const transition_counts& t, std::vector<double>& out) const;

  const colored_graph& graph() const { return g_; }

 private:
  template <class Num>
  void predict_impl(const transition_counts& t, std::vector<Num>& out) const;

  colored_graph g_;
  std::vector<double> alpha_f_, alpha_row_f_, beta_f_;
  std::vector<std::vector<double>> beta_sum_f_;  // parallel to g_.rows
};

std::vector<rat> colored_predictive(const colored_graph& g, const transition_counts& t, state i);

// true when any two vertices have out-color sets that are equal or disjoint
bool is_partitioned_colors(const colored_graph& g);

// Vertex grouping by out-color set; group -1 marks vertices with no out-edges.
struct color_partition {
  bool partitioned = false;
  std::vector<int> group_of_state;
  std::vector<std::vector<int>> group_colors;  // per group, sorted color ids
  std::vector<std::vector<state>> group_states;
};

color_partition analyze_partition(const colored_graph& g);

// ---------------------------------------------------------------------------
// Table-driven scheme: an explicit map from full histories to distributions,
// with a generator filling unlisted entries.  The workhorse for planted
// counterexamples and randomized checker corpora.
// ---------------------------------------------------------------------------

class table_scheme final : public scheme {
 public:
  using generator = std::function<std::vector<rat>(const path&)>;

  table_scheme(state_space sp, generator gen,
               sufficiency declared = sufficiency::full_history);

  const state_space& space() const override { return sp_; }
  sufficiency declared_sufficiency() const override { return declared_; }
  void next_exact(const history_view& h, std::vector<rat>& out) const override;
  void next_float(const history_view& h, std::vector<double>& out) const override;

  void set_entry(const path& h, std::vector<rat> dist);

 private:
  const std::vector<rat>& lookup(const path& h) const;

  state_space sp_;
  generator gen_;
  sufficiency declared_;
  mutable std::map<std::pair<state, std::vector<state>>, std::vector<rat>> cache_;
};

// uniform over the whole space at every history
table_scheme::generator uniform_generator(int n_states);
// pseudo-random rational distribution from a hash of the full history
table_scheme::generator hashed_history_generator(int n_states, std::uint64_t seed);
// pseudo-random rational distribution from a hash of (last state, count table):
// equivalent histories get identical rows by construction
table_scheme::generator hashed_summary_generator(int n_states, std::uint64_t seed);

// ---------------------------------------------------------------------------
// The growing-support uniform scheme: from x0 = "0", the n-th step is uniform
// on {1, ..., n}.  One-step predictives depend on the history only through
// counts, yet the law is not a mixture of Markov chains.  States live on a
// fixed label capacity; stepping past it is a model error.
// ---------------------------------------------------------------------------

class growing_uniform_scheme final : public scheme {
 public:
  explicit growing_uniform_scheme(int capacity);

  const state_space& space() const override { return sp_; }
  sufficiency declared_sufficiency() const override { return sufficiency::last_and_counts; }
  void next_exact(const history_view& h, std::vector<rat>& out) const override;
  void next_float(const history_view& h, std::vector<double>& out) const override;

 private:
  state_space sp_;
};

// ---------------------------------------------------------------------------
// Reductions between the families.
// ---------------------------------------------------------------------------

// Monochromatic colored graph with beta_{ij} = alpha_i q_i(j); its walk is the
// Hoppe walk exactly.  Edges exist where q is positive.
colored_graph hoppe_as_colored(const hoppe_params& par, const std::string& color_name = "c");

// ERRW as a colored walk: each undirected edge becomes a pair of directed
// edges sharing a private color; each loop becomes a detour through an
// auxiliary vertex whose two edges share the loop's color.
struct errw_embedding {
  colored_graph graph;
  std::vector<state> loop_aux;  // per base state: auxiliary vertex id or -1

  // base path -> embedded path (loop traversals expanded through the aux vertex)
  path embed(const path& base) const;
};

errw_embedding embed_errw(const errw_params& par);

}  // namespace rrw
