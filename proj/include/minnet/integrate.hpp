#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "minnet/error.hpp"
#include "minnet/lattice.hpp"
#include "minnet/parallel.hpp"
#include "minnet/report.hpp"

namespace minnet {

/// Increment along the forward edge a -> b (b = a + kStepM or a + kStepN).
using EdgeIncrement = std::function<Vec3(Vertex a, Vertex b)>;

struct Integrated {
  Net3 net;
  CheckReport closure;  ///< per-quad loop residual relative to the quad's edge scale
};

/// Integrates an edge 1-form over the domain along a breadth-first spanning
/// tree rooted at the lexicographically smallest vertex, which maps to the
/// origin. Every quad loop is then checked; loops that fail to close by more
/// than tol (relative) raise ClosureFailure.
inline Integrated integrate_edges(const LatticeDomain& dom, const EdgeIncrement& d, double tol = 1e-9) {
  const auto edges = dom.edges();
  // Evaluate every forward increment once, in parallel.
  std::vector<Vec3> inc(edges.size());
  parallel_for(edges.size(), [&](std::size_t i) { inc[i] = d(edges[i].first, edges[i].second); });
  LatticeField<Vec3> dm(dom, Vec3::Zero()), dn(dom, Vec3::Zero());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!inc[i].allFinite())
      fail(Errc::closure_failure, "non-finite edge increment at " + to_string(edges[i].first));
    (edges[i].second.m != edges[i].first.m ? dm : dn)[edges[i].first] = inc[i];
  }
  auto step = [&](Vertex from, Vertex to) -> Vec3 {
    if (to == from + kStepM) return dm[from];
    if (to == from + kStepN) return dn[from];
    if (from == to + kStepM) return -dm[to];
    return -dn[to];
  };

  Net3 f(dom, Vec3::Zero());
  const Vertex root = dom.vertices().front();
  std::vector<char> seen(dom.slot_count(), 0);
  std::deque<Vertex> queue{root};
  seen[dom.slot(root)] = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (const auto& w : dom.neighbors(v)) {
      if (seen[dom.slot(w)]) continue;
      seen[dom.slot(w)] = 1;
      f[w] = f[v] + step(v, w);
      queue.push_back(w);
    }
  }

  const auto quads = dom.quads();
  std::vector<double> res(quads.size());
  parallel_for(quads.size(), [&](std::size_t i) {
    const Vertex q = quads[i];
    const Vec3 a = dm[q], b = dn[q + kStepM], c = dm[q + kStepN], e = dn[q];
    const double scale = std::max({a.norm(), b.norm(), c.norm(), e.norm(), 1e-300});
    res[i] = (a + b - c - e).norm() / scale;
  });
  Integrated out{std::move(f), collect("closure", tol, quads, res)};
  if (!out.closure.pass)
    fail(Errc::closure_failure, "quad loop does not close at " + to_string(*out.closure.worst) +
                                    " (residual " + std::to_string(out.closure.max_residual) + ")");
  return out;
}

}  // namespace minnet
