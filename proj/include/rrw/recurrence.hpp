#pragma once

// Single-path Monte Carlo diagnostics for recurrence of reinforced walks,
// plus the structural irreducibility test on a weight matrix.  The traces
// are evidence, not certificates: divergence of the tracked sums along one
// finite path cannot prove an almost-sure statement, so every trace carries
// an explicit tag saying so.

#include <cstdint>
#include <string>
#include <vector>

#include "rrw/scheme.hpp"
#include "rrw/schemes.hpp"

namespace rrw {

inline constexpr const char* kDiagnosticTag = "diagnostic, not proof";

// Partial sums S_N = sum over n < N of p(x0 | history of length n) along one
// simulated trajectory.  Unbounded growth of S_N is the recurrence signal.
struct recurrence_trace {
  std::vector<double> partial_sums;  // partial_sums[n] holds S_{n+1}
  std::vector<double> summands;      // summands[n] = p(x0 | first n steps), in [0,1]
  std::vector<int> returns;          // times n >= 1 with x_n = x0
  path walk;
  std::string tag = kDiagnosticTag;
};

// Simulates n_steps steps from x0 and accumulates the predictive mass of x0
// before each step.  Summands come from the exact predictive, not from
// empirical frequencies; sampling uses the same distribution.
recurrence_trace recurrence_sum_trace(const scheme& s, state x0, int n_steps,
                                      std::uint64_t seed);

// Predictive mass of j recorded at every realized visit to i (the visit at
// time 0 counts when x0 = i; visits at the final position have no successor
// and are skipped).  Divergence of the sum along visits backs the dichotomy:
// either i is visited finitely often or j is visited infinitely often.
struct return_trace {
  std::vector<int> visit_times;      // times t with x_t = i and t < n_steps
  std::vector<double> summands;      // p(j | history up to that visit)
  std::vector<double> partial_sums;
  path walk;
  std::string tag = kDiagnosticTag;
};

return_trace return_diagnostic(const scheme& s, state i, state j, state x0,
                               int n_steps, std::uint64_t seed);

// True iff the directed graph of positive entries is strongly connected.
// Every row must sum to exactly 1, except that an all-zero row (an unvisited
// state) is tolerated and simply breaks connectivity.  Anything else is an
// input error.
bool is_irreducible(const std::vector<std::vector<rat>>& q);

// Row-stochastic weight matrix of a colored graph: the mean of the induced
// random transition matrix, Q_{i,j} = [alpha_c / alpha_{C(i)}] * [beta_{i,j}
// / beta_{i,E_c}] for the color c of edge (i,j).  Rows of states with no
// outgoing edge are all zero.
std::vector<std::vector<rat>> q_matrix(const colored_graph& g);

}  // namespace rrw
