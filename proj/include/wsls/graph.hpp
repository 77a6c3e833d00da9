#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wsls {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
};

// Immutable undirected simple graph. Incidence is stored in CSR form and is
// built once at construction, so instances are safe to share across replica
// threads.
class Graph {
 public:
  // Validates: endpoints < node_count, no self-loops, no duplicate edges.
  static Graph from_edges(NodeId node_count, std::vector<Edge> edges);

  NodeId node_count() const { return node_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const EdgeId> incident_edges(NodeId v) const {
    return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  NodeId degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  NodeId opposite(EdgeId e, NodeId v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }
  bool has_edge(NodeId u, NodeId v) const;

 private:
  Graph() = default;

  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<EdgeId> incidence_;
  std::vector<std::uint32_t> offsets_;
};

// Star layout of an (n,d)-caterpillar: internal path nodes are the star
// roots; each star designates two "external" vertices that it shares with
// (or presents to) its neighbors. For middle stars these are the adjacent
// internal nodes; for extremal stars the missing side is the star's
// lowest-index leaf, fixed so runs are reproducible.
struct CaterpillarLayout {
  std::uint32_t path_length = 0;  // number of internal nodes (n)
  std::uint32_t degree = 0;       // internal-node degree (d)
  std::vector<NodeId> internal_nodes;
  std::vector<std::vector<NodeId>> leaves;            // per star
  std::vector<std::array<NodeId, 2>> external_pairs;  // per star: {prev side, next side}
};

struct Caterpillar {
  Graph graph;
  CaterpillarLayout layout;
};

Graph build_cycle(NodeId n);
Graph build_complete(NodeId n);

// n >= 1 internal nodes of degree d >= 3; node ids 0..n-1 are the internal
// path, leaves follow star by star. For n == 1 both external vertices are
// the two lowest-index leaves.
Caterpillar build_caterpillar(std::uint32_t n, std::uint32_t d);

// Pairing/configuration model with full restart on any self-loop or
// multi-edge; gives up after 10000 restarts.
Graph build_random_regular(NodeId n, NodeId d, std::uint64_t seed);

struct ExpansionResult {
  std::int64_t boundary = 0;  // |E(U,U^c)| at the minimizer
  std::int64_t volume = 0;    // vol(U) at the minimizer
  std::vector<NodeId> argmin; // sorted; lexicographically smallest among ties
  bool exact = true;          // false for the sampled upper-bound mode
  double value() const {
    return static_cast<double>(boundary) / static_cast<double>(volume);
  }
  // Reduced fraction boundary/volume.
  std::pair<std::int64_t, std::int64_t> as_fraction() const;
};

// Exact min of |E(U,U^c)|/vol(U) over alpha <= |U| <= beta by exhaustive
// enumeration. The amount of work is sum_k C(n,k) subsets; throws
// std::length_error when that exceeds work_limit (default 2^24). Callers
// over the limit must use expansion_constant_sampled.
ExpansionResult expansion_constant(const Graph& g, std::uint32_t alpha,
                                   std::uint32_t beta,
                                   std::uint64_t work_limit = 1ULL << 24);

// Randomized subset search; returns an upper bound on the expansion
// constant (flagged exact = false).
ExpansionResult expansion_constant_sampled(const Graph& g, std::uint32_t alpha,
                                           std::uint32_t beta,
                                           std::uint64_t samples,
                                           std::uint64_t seed);

// Edge-list text format: "n m" then m lines "u v", edges sorted
// lexicographically.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);

}  // namespace wsls
