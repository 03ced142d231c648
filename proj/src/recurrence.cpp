#include "rrw/recurrence.hpp"

#include <deque>

#include "rrw/errors.hpp"
#include "rrw/rng.hpp"

namespace rrw {

namespace {

state sample_from(const std::vector<rat>& dist, rng64& r, std::vector<double>& scratch) {
  scratch.resize(dist.size());
  for (std::size_t j = 0; j < dist.size(); ++j) scratch[j] = to_double(dist[j]);
  return static_cast<state>(r.next_index(scratch));
}

}  // namespace

recurrence_trace recurrence_sum_trace(const scheme& s, state x0, int n_steps,
                                      std::uint64_t seed) {
  if (n_steps < 1) throw input_error("recurrence trace needs at least one step");
  recurrence_trace tr;
  tr.partial_sums.reserve(static_cast<std::size_t>(n_steps));
  tr.summands.reserve(static_cast<std::size_t>(n_steps));

  walker w(s.space().size(), x0);
  rng64 r(seed);
  std::vector<rat> dist;
  std::vector<double> scratch;
  double running = 0.0;
  for (int n = 0; n < n_steps; ++n) {
    s.next_exact(w.view(), dist);
    double summand = to_double(dist[static_cast<std::size_t>(x0)]);
    running += summand;
    tr.summands.push_back(summand);
    tr.partial_sums.push_back(running);
    state next = sample_from(dist, r, scratch);
    w.push(next);
    if (next == x0) tr.returns.push_back(n + 1);
  }
  tr.walk = w.current();
  return tr;
}

return_trace return_diagnostic(const scheme& s, state i, state j, state x0,
                               int n_steps, std::uint64_t seed) {
  if (n_steps < 1) throw input_error("return diagnostic needs at least one step");
  if (i < 0 || i >= s.space().size() || j < 0 || j >= s.space().size())
    throw input_error("return diagnostic states out of range");
  return_trace tr;

  walker w(s.space().size(), x0);
  rng64 r(seed);
  std::vector<rat> dist;
  std::vector<double> scratch;
  double running = 0.0;
  for (int t = 0; t < n_steps; ++t) {
    s.next_exact(w.view(), dist);
    if (w.counts().last() == i) {
      double summand = to_double(dist[static_cast<std::size_t>(j)]);
      running += summand;
      tr.visit_times.push_back(t);
      tr.summands.push_back(summand);
      tr.partial_sums.push_back(running);
    }
    w.push(sample_from(dist, r, scratch));
  }
  tr.walk = w.current();
  return tr;
}

bool is_irreducible(const std::vector<std::vector<rat>>& q) {
  const std::size_t n = q.size();
  if (n == 0) throw input_error("irreducibility test on an empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i].size() != n)
      throw input_error("weight matrix is not square at row " + std::to_string(i));
    rat sum = 0;
    bool any = false;
    for (const rat& v : q[i]) {
      if (v < 0) throw input_error("negative weight in row " + std::to_string(i));
      if (v > 0) any = true;
      sum += v;
    }
    if (any && sum != 1)
      throw input_error("row " + std::to_string(i) + " sums to " + format_rational(sum) +
                        ", not 1");
    if (!any) return false;  // a state with no exits reaches nothing
  }

  // strong connectivity: everything reachable from 0, and 0 reachable from
  // everything (breadth-first on the forward and reverse graphs)
  auto reach = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        bool edge = forward ? q[u][v] > 0 : q[v][u] > 0;
        if (edge && !seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    return seen;
  };
  auto fwd = reach(true);
  auto bwd = reach(false);
  for (std::size_t v = 0; v < n; ++v)
    if (!fwd[v] || !bwd[v]) return false;
  return true;
}

std::vector<std::vector<rat>> q_matrix(const colored_graph& g) {
  const int K = g.sp.size();
  std::vector<std::vector<rat>> q(static_cast<std::size_t>(K),
                                  std::vector<rat>(static_cast<std::size_t>(K), rat(0)));
  for (state i = 0; i < K; ++i) {
    const auto& row = g.rows[static_cast<std::size_t>(i)];
    if (row.empty()) continue;
    const rat& denom = g.alpha_row[static_cast<std::size_t>(i)];
    for (const auto& grp : row) {
      rat cfac = g.alpha[static_cast<std::size_t>(grp.color)] / denom;
      for (std::size_t e : grp.edge_ids) {
        const colored_edge& ed = g.edges[e];
        q[static_cast<std::size_t>(i)][static_cast<std::size_t>(ed.to)] =
            cfac * ed.beta / grp.beta_sum;
      }
    }
  }
  return q;
}

}  // namespace rrw
