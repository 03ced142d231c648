#include "rrw/bayes.hpp"

#include "rrw/errors.hpp"
#include "rrw/rng.hpp"
#include "rrw/scheme.hpp"

namespace rrw {

partitioned_prior make_prior(colored_graph g, state start) {
  if (start < 0 || start >= g.sp.size()) throw input_error("prior start state out of range");
  color_partition part = analyze_partition(g);
  if (!part.partitioned)
    throw model_error("colors are not partitioned: two states share a color without "
                      "sharing their whole outgoing color set");
  partitioned_prior pr;
  pr.graph = std::move(g);
  pr.partition = std::move(part);
  pr.start = start;
  return pr;
}

transition_sample sample_transition_matrix(const partitioned_prior& prior,
                                           std::uint64_t seed) {
  const colored_graph& g = prior.graph;
  const int K = g.sp.size();
  transition_sample out;
  out.color_mass.assign(g.color_names.size(), 0.0);
  out.edge_prob.assign(g.edges.size(), 0.0);
  out.rows.assign(static_cast<std::size_t>(K),
                  std::vector<double>(static_cast<std::size_t>(K), 0.0));

  rng64 r(seed);
  std::vector<double> conc;

  // one Dirichlet over the colors of each group, shared by the whole group
  for (const auto& colors : prior.partition.group_colors) {
    conc.clear();
    for (int c : colors) conc.push_back(to_double(g.alpha[static_cast<std::size_t>(c)]));
    auto draw = r.next_dirichlet(conc);
    for (std::size_t k = 0; k < colors.size(); ++k)
      out.color_mass[static_cast<std::size_t>(colors[k])] = draw[k];
  }

  // independent Dirichlet over the targets of every (state, color) cell
  for (state i = 0; i < K; ++i) {
    for (const auto& grp : g.rows[static_cast<std::size_t>(i)]) {
      if (grp.edge_ids.empty())
        throw model_error("state " + g.sp.label(i) + " declares color " +
                          g.color_names[static_cast<std::size_t>(grp.color)] +
                          " with no outgoing edge");
      conc.clear();
      for (std::size_t e : grp.edge_ids) conc.push_back(to_double(g.edges[e].beta));
      auto draw = r.next_dirichlet(conc);
      for (std::size_t k = 0; k < grp.edge_ids.size(); ++k) {
        std::size_t e = grp.edge_ids[k];
        out.edge_prob[e] = draw[k];
        out.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(g.edges[e].to)] =
            out.color_mass[static_cast<std::size_t>(grp.color)] * draw[k];
      }
    }
  }
  return out;
}

partitioned_prior posterior_update(const partitioned_prior& prior, const path& p) {
  if (p.x0 != prior.start)
    throw input_error("walk starts at " + prior.graph.sp.label(p.x0) +
                      " but the prior is anchored at " + prior.graph.sp.label(prior.start));
  const colored_graph& g = prior.graph;
  transition_counts t = count_transitions(g.sp.size(), p);

  colored_graph updated = g;
  for (state i = 0; i < g.sp.size(); ++i) {
    for (state j = 0; j < g.sp.size(); ++j) {
      std::uint32_t c = t.at(i, j);
      if (c == 0) continue;
      std::size_t e = g.edge_between(i, j);
      if (e == colored_graph::npos)
        throw input_error("walk uses pair (" + g.sp.label(i) + ", " + g.sp.label(j) +
                          ") but the graph has no such edge");
      updated.edges[e].beta += c;
      updated.alpha[static_cast<std::size_t>(g.edges[e].color)] += c;
    }
  }
  updated.finalize();
  return make_prior(std::move(updated), p.last());
}

estimated_matrix estimate_transition_matrix(const path& p, const state_space& sp) {
  const int K = sp.size();
  estimated_matrix est{sp.with_boundary(), {}};
  est.rows.assign(static_cast<std::size_t>(K) + 1,
                  std::vector<rat>(static_cast<std::size_t>(K) + 1, rat(0)));

  transition_counts t = count_transitions(K, p);
  for (state i = 0; i < K; ++i) {
    auto& row = est.rows[static_cast<std::size_t>(i)];
    std::uint64_t total = t.row_total(i);
    if (total == 0) {
      row[static_cast<std::size_t>(K)] = 1;  // never left i: leftover mass on the boundary
      continue;
    }
    for (state j = 0; j < K; ++j)
      row[static_cast<std::size_t>(j)] = rat(t.at(i, j)) / rat(total);
  }
  est.rows[static_cast<std::size_t>(K)][static_cast<std::size_t>(K)] = 1;
  return est;
}

successor_trace successor_predictive_trace(const scheme& s, const path& p, state i,
                                           state j) {
  if (i < 0 || i >= s.space().size() || j < 0 || j >= s.space().size())
    throw input_error("successor trace states out of range");
  successor_trace tr;
  walker w(s.space().size(), p.x0);
  std::vector<rat> dist;
  for (int t = 0; t <= p.length(); ++t) {
    if (p.at(t) == i) {
      s.next_exact(w.view(), dist);
      tr.visit_times.push_back(t);
      tr.values.push_back(dist[static_cast<std::size_t>(j)]);
    }
    if (t < p.length()) w.push(p.steps[static_cast<std::size_t>(t)]);
  }
  return tr;
}

}  // namespace rrw
