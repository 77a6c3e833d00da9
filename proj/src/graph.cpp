#include "wsls/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "wsls/rng.hpp"

namespace wsls {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph Graph::from_edges(NodeId node_count, std::vector<Edge> edges) {
  Graph g;
  g.node_count_ = node_count;
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(edge_key(e.u, e.v)).second)
      throw std::invalid_argument("graph: duplicate edge");
  }
  g.edges_ = std::move(edges);

  g.offsets_.assign(node_count + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.incidence_.resize(g.offsets_.back());
  std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId i = 0; i < g.edges_.size(); ++i) {
    g.incidence_[cursor[g.edges_[i].u]++] = i;
    g.incidence_[cursor[g.edges_[i].v]++] = i;
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count_ || v >= node_count_ || u == v) return false;
  const NodeId probe = degree(u) <= degree(v) ? u : v;
  const NodeId other = probe == u ? v : u;
  for (EdgeId e : incident_edges(probe))
    if (opposite(e, probe) == other) return true;
  return false;
}

Graph build_cycle(NodeId n) {
  if (n < 3) throw std::invalid_argument("build_cycle: n must be >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, n - 1});
  return Graph::from_edges(n, std::move(edges));
}

Graph build_complete(NodeId n) {
  if (n < 2) throw std::invalid_argument("build_complete: n must be >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph::from_edges(n, std::move(edges));
}

Caterpillar build_caterpillar(std::uint32_t n, std::uint32_t d) {
  if (n < 1) throw std::invalid_argument("build_caterpillar: n must be >= 1");
  if (d < 3) throw std::invalid_argument("build_caterpillar: d must be >= 3");

  CaterpillarLayout layout;
  layout.path_length = n;
  layout.degree = d;
  layout.internal_nodes.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) layout.internal_nodes[i] = i;

  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});

  NodeId next = n;
  layout.leaves.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t path_neighbors = (n == 1) ? 0 : (i == 0 || i == n - 1) ? 1 : 2;
    const std::uint32_t leaf_count = d - path_neighbors;
    for (std::uint32_t k = 0; k < leaf_count; ++k) {
      layout.leaves[i].push_back(next);
      edges.push_back({i, next});
      ++next;
    }
  }

  layout.external_pairs.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const NodeId prev_side = (i > 0) ? layout.internal_nodes[i - 1] : layout.leaves[i][0];
    const NodeId next_side = (i + 1 < n) ? layout.internal_nodes[i + 1]
                             : (n == 1) ? layout.leaves[i][1]
                                        : layout.leaves[i][0];
    layout.external_pairs[i] = {prev_side, next_side};
  }

  Caterpillar result;
  result.graph = Graph::from_edges(next, std::move(edges));
  result.layout = std::move(layout);
  return result;
}

Graph build_random_regular(NodeId n, NodeId d, std::uint64_t seed) {
  if (d >= n) throw std::invalid_argument("build_random_regular: need d < n");
  if ((static_cast<std::uint64_t>(n) * d) % 2 != 0)
    throw std::invalid_argument("build_random_regular: n*d must be even");

  Rng rng(seed);
  const std::size_t stubs = static_cast<std::size_t>(n) * d;
  std::vector<NodeId> pairing(stubs);
  constexpr int kMaxRestarts = 10000;
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    for (std::size_t i = 0; i < stubs; ++i)
      pairing[i] = static_cast<NodeId>(i / d);
    for (std::size_t i = stubs - 1; i > 0; --i)
      std::swap(pairing[i], pairing[rng.uniform_index(i + 1)]);

    std::vector<Edge> edges;
    edges.reserve(stubs / 2);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(stubs);
    bool simple = true;
    for (std::size_t i = 0; i < stubs; i += 2) {
      NodeId u = pairing[i], v = pairing[i + 1];
      if (u == v || !seen.insert(edge_key(u, v)).second) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      edges.push_back({u, v});
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return Graph::from_edges(n, std::move(edges));
  }
  throw std::runtime_error(
      "build_random_regular: no simple pairing found after 10000 restarts");
}

std::pair<std::int64_t, std::int64_t> ExpansionResult::as_fraction() const {
  const std::int64_t g = std::gcd(boundary, volume);
  return {boundary / (g == 0 ? 1 : g), volume / (g == 0 ? 1 : g)};
}

namespace {

// Running cut/volume state for incremental subset enumeration.
struct SubsetState {
  const Graph* g;
  std::vector<std::uint8_t> in_set;
  std::int64_t cut = 0;
  std::int64_t vol = 0;

  explicit SubsetState(const Graph& graph)
      : g(&graph), in_set(graph.node_count(), 0) {}

  void add(NodeId v) {
    std::int64_t inside = 0;
    for (EdgeId e : g->incident_edges(v))
      if (in_set[g->opposite(e, v)]) ++inside;
    cut += static_cast<std::int64_t>(g->degree(v)) - 2 * inside;
    vol += g->degree(v);
    in_set[v] = 1;
  }
  void remove(NodeId v) {
    in_set[v] = 0;
    std::int64_t inside = 0;
    for (EdgeId e : g->incident_edges(v))
      if (in_set[g->opposite(e, v)]) ++inside;
    cut -= static_cast<std::int64_t>(g->degree(v)) - 2 * inside;
    vol -= g->degree(v);
  }
};

struct Best {
  bool found = false;
  std::int64_t cut = 0;
  std::int64_t vol = 0;
  std::vector<NodeId> argmin;

  // Strictly smaller ratio wins; ties go to the lexicographically smaller
  // node sequence. Subsets with vol == 0 carry no ratio and are skipped.
  void offer(std::int64_t c, std::int64_t v, const std::vector<NodeId>& set) {
    if (v == 0) return;
    if (found) {
      const std::int64_t lhs = c * vol, rhs = cut * v;
      if (lhs > rhs) return;
      if (lhs == rhs && !std::lexicographical_compare(set.begin(), set.end(),
                                                      argmin.begin(),
                                                      argmin.end()))
        return;
    }
    found = true;
    cut = c;
    vol = v;
    argmin = set;
  }
};

void enumerate_subsets(SubsetState& state, std::vector<NodeId>& current,
                       NodeId first, std::uint32_t remaining, Best& best) {
  if (remaining == 0) {
    best.offer(state.cut, state.vol, current);
    return;
  }
  const NodeId n = state.g->node_count();
  for (NodeId v = first; v + remaining <= n; ++v) {
    state.add(v);
    current.push_back(v);
    enumerate_subsets(state, current, v + 1, remaining - 1, best);
    current.pop_back();
    state.remove(v);
  }
}

std::uint64_t enumeration_work(std::uint32_t n, std::uint32_t alpha,
                               std::uint32_t beta, std::uint64_t cap) {
  constexpr std::uint64_t kSat = 1000000000000000000ULL;
  std::uint64_t total = 0;
  for (std::uint32_t k = alpha; k <= beta; ++k) {
    // C(n,k); the running product stays exact because each prefix is a
    // binomial coefficient times (i+1).
    std::uint64_t c = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (c > kSat / (n - i)) return cap + 1;
      c = c * (n - i) / (i + 1);
    }
    if (c > cap) return cap + 1;
    total += c;
    if (total > cap) return cap + 1;
  }
  return total;
}

void check_expansion_args(const Graph& g, std::uint32_t alpha,
                          std::uint32_t beta) {
  if (alpha == 0 || alpha > beta || beta >= g.node_count())
    throw std::invalid_argument("expansion_constant: need 0 < alpha <= beta < n");
  if (g.edge_count() == 0)
    throw std::invalid_argument("expansion_constant: graph has no edges");
}

}  // namespace

ExpansionResult expansion_constant(const Graph& g, std::uint32_t alpha,
                                   std::uint32_t beta,
                                   std::uint64_t work_limit) {
  check_expansion_args(g, alpha, beta);
  if (enumeration_work(g.node_count(), alpha, beta, work_limit) > work_limit)
    throw std::length_error(
        "expansion_constant: subset enumeration exceeds work limit; "
        "use expansion_constant_sampled");

  Best best;
  SubsetState state(g);
  std::vector<NodeId> current;
  for (std::uint32_t k = alpha; k <= beta; ++k)
    enumerate_subsets(state, current, 0, k, best);
  if (!best.found)
    throw std::invalid_argument("expansion_constant: all subsets have zero volume");

  ExpansionResult r;
  r.boundary = best.cut;
  r.volume = best.vol;
  r.argmin = std::move(best.argmin);
  r.exact = true;
  return r;
}

ExpansionResult expansion_constant_sampled(const Graph& g, std::uint32_t alpha,
                                           std::uint32_t beta,
                                           std::uint64_t samples,
                                           std::uint64_t seed) {
  check_expansion_args(g, alpha, beta);
  if (samples == 0)
    throw std::invalid_argument("expansion_constant_sampled: samples must be >= 1");

  Rng rng(seed);
  const NodeId n = g.node_count();
  std::vector<NodeId> pool(n);
  Best best;
  SubsetState state(g);
  std::vector<NodeId> subset;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto k = static_cast<std::uint32_t>(
        alpha + rng.uniform_index(beta - alpha + 1));
    for (NodeId i = 0; i < n; ++i) pool[i] = i;
    subset.clear();
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto j = static_cast<NodeId>(i + rng.uniform_index(n - i));
      std::swap(pool[i], pool[j]);
      subset.push_back(pool[i]);
    }
    std::sort(subset.begin(), subset.end());
    for (NodeId v : subset) state.add(v);
    best.offer(state.cut, state.vol, subset);
    for (NodeId v : subset) state.remove(v);
  }

  ExpansionResult r;
  r.boundary = best.cut;
  r.volume = best.vol;
  r.argmin = std::move(best.argmin);
  r.exact = false;
  return r;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  std::vector<Edge> sorted = g.edges();
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : sorted) out << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& in) {
  NodeId n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw std::runtime_error("edge list: bad header");
  std::vector<Edge> edges(m);
  for (auto& e : edges)
    if (!(in >> e.u >> e.v)) throw std::runtime_error("edge list: truncated");
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace wsls
