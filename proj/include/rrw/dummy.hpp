#pragma once

// Dummy-state machinery: auxiliary vertices inserted on chosen edges, each
// with the single outgoing edge to the original target.  A walk observed on
// the base graph then has a set A(x0, x) of consistent completions on the
// augmented graph; its probability is the sum over completions, computable
// either by full enumeration or grouped by dummy visit counts with the
// closed-form class sizes.  A Gibbs sampler over the unknown successors
// targets the exact conditional law of the completion.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rrw/core.hpp"
#include "rrw/rational.hpp"
#include "rrw/schemes.hpp"

namespace rrw {

// One batch of dummy states on an existing base edge.  in_* describes the
// (from, dummy) edges, out_* the forced (dummy, to) edges.  The alpha values
// are used only when the named color is new to the graph.
struct dummy_placement {
  std::string from, to;
  int count = 1;
  std::string in_color;
  rat in_alpha = 1;
  rat in_beta = 1;
  std::string out_color;
  rat out_alpha = 1;
  rat out_beta = 1;
};

struct augmented_graph {
  colored_graph base;
  colored_graph star;  // base plus dummy vertices; base states keep their ids
  int n_base = 0;

  std::vector<std::vector<state>> dummies_on_edge;  // by base edge id, star ids
  std::vector<std::size_t> dummy_base_edge;         // by (star id - n_base)
  std::vector<std::size_t> carrying_edges;          // base edge ids with dummies

  int n_dummies() const { return star.sp.size() - n_base; }
  bool is_dummy(state s) const { return s >= n_base; }
};

// Builds the augmented graph.  Placements must name existing base edges, one
// placement per edge.  With require_partitioned the star graph must have
// partitioned colors (model_error otherwise).
augmented_graph augment(const colored_graph& base,
                        const std::vector<dummy_placement>& placements,
                        bool require_partitioned = false);

// The free choices of a completion: the time-ordered traversals of
// dummy-carrying pairs in x.  A completion assigns each slot either 0 (the
// direct edge) or 1..k (a detour through that dummy).
struct completion_slots {
  std::vector<int> slot_time;                    // step index into x.steps
  std::vector<std::size_t> slot_edge;            // base edge id
};

completion_slots find_slots(const augmented_graph& aug, const path& x);

// |A(x0, x)| from the closed form: product over slots of (1 + #dummies).
bigint completion_count(const augmented_graph& aug, const path& x);

// Expands x into the star-graph walk selected by the per-slot choices.
path complete(const augmented_graph& aug, const path& x, const std::vector<int>& choices);

// Every consistent completion, in lexicographic choice order.  resource_error
// naming the exact count when it exceeds the budget.
std::vector<path> consistent_strings(const augmented_graph& aug, const path& x,
                                     std::uint64_t budget = 100000);

// N_m for visit counts m (indexed by star id - n_base): the number of
// completions whose dummy visit counts equal m.  input_error when m is
// infeasible for the walk's transition counts.
bigint class_size(const augmented_graph& aug, const path& x,
                  const std::vector<std::uint32_t>& m);

struct completion_class {
  std::vector<std::uint32_t> m;
  path representative;  // lexicographically first completion with counts m
  bigint size;
};

// All feasible visit-count classes.  Sum of sizes is |A(x0, x)| exactly.
std::vector<completion_class> completion_classes(const augmented_graph& aug, const path& x,
                                                 std::uint64_t budget = 100000);

// Walk probability on the base graph as the grouped sum over classes of
// N_m * p*(representative), with p* the colored-walk law on the star graph.
rat marginal_probability(const augmented_graph& aug, const path& x,
                         std::uint64_t budget = 100000);

// Same quantity by brute enumeration of every completion.  The two routes
// must agree exactly; tests compare them.
rat marginal_probability_enumerated(const augmented_graph& aug, const path& x,
                                    std::uint64_t budget = 100000);

// Folds dummy mass back onto base pairs: row i gains P*(i, d) onto (i, j)
// for every dummy d sitting on (i, j).  star_rows is indexed by star ids.
std::vector<std::vector<double>> induced_transition(
    const augmented_graph& aug, const std::vector<std::vector<double>>& star_rows);

// Systematic-sweep Gibbs over the unknown successors.  Each sweep resamples
// every slot left to right from its exact full conditional; one state is
// recorded per sweep after burn-in (default 10 * #slots).
struct gibbs_result {
  completion_slots slots;
  std::map<std::vector<int>, std::uint64_t> visits;  // choice vector -> count
  std::uint64_t recorded = 0;
  int burn_in = 0;
};

gibbs_result gibbs_successors(const augmented_graph& aug, const path& x, int sweeps,
                              std::uint64_t seed, int burn_in = -1);

}  // namespace rrw
