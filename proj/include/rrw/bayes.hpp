#pragma once

// Conjugate prior machinery for random transition matrices on a colored
// graph with partitioned colors.  A prior holds the graph (color weights
// alpha, edge weights beta) plus the start state; sampling composes one
// Dirichlet over each group's colors with independent per-(state, color)
// Dirichlets over targets.  The posterior after observing a walk is the same
// family with counts added, so the update is a parameter shift.
//
// Only finite graphs are supported; countable color groups would need a
// truncation scheme this artifact does not provide.

#include <cstdint>
#include <vector>

#include "rrw/core.hpp"
#include "rrw/rational.hpp"
#include "rrw/schemes.hpp"

namespace rrw {

struct partitioned_prior {
  colored_graph graph;       // carries alpha per color and beta per edge
  color_partition partition; // state groups sharing an outgoing color set
  state start = 0;
};

// model_error when the graph's colors are not partitioned.
partitioned_prior make_prior(colored_graph g, state start);

// One draw of the random transition matrix.  color_mass[c] is the realized
// weight of color c inside its group's Dirichlet; edge_prob[e] the realized
// probability of edge e within its (from, color) cell; rows composes the
// two.  Rows of states with no outgoing edges are all zero.
struct transition_sample {
  std::vector<double> color_mass;            // indexed by color id
  std::vector<double> edge_prob;             // indexed by edge id
  std::vector<std::vector<double>> rows;     // K x K, visited rows sum to ~1
};

transition_sample sample_transition_matrix(const partitioned_prior& prior,
                                           std::uint64_t seed);

// Adds the walk's transition counts onto the parameters: alpha gains the
// color totals, each beta gains its edge count, and the start moves to the
// walk's last state.  input_error when the walk begins elsewhere than the
// prior's start or uses a pair with no edge.
partitioned_prior posterior_update(const partitioned_prior& prior, const path& p);

// Empirical transition matrix of a walk on the space enlarged by the
// absorbing boundary symbol.  Row i is T_{i,j}/T_{i,.} when state i has
// observed outgoing transitions; otherwise the whole row sits on the
// boundary.  The boundary row is absorbing.  Every row sums to exactly 1.
struct estimated_matrix {
  state_space enlarged;                    // original labels plus the boundary
  std::vector<std::vector<rat>> rows;      // (K+1) x (K+1); index K = boundary
};

estimated_matrix estimate_transition_matrix(const path& p, const state_space& sp);

// Predictive mass on j recorded at every visit to i while replaying a fixed
// walk (the visit at the final position included).  Under a scheme whose
// predictive depends only on the last state and its successors, this trace
// depends only on the successor row of i.
struct successor_trace {
  std::vector<int> visit_times;
  std::vector<rat> values;
};

successor_trace successor_predictive_trace(const scheme& s, const path& p, state i,
                                           state j);

}  // namespace rrw
