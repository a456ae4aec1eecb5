#ifndef CHEAPTALK_NETWORK_HPP
#define CHEAPTALK_NETWORK_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cheaptalk/rng.hpp"

namespace cheaptalk {

enum class Topology {
  lattice,
  small_world,
  random_regular,
  well_mixed,
  scale_free,
};

const char* topology_name(Topology t);
Topology topology_from_name(const std::string& name);  // throws ConfigError

// Which generator to build plus its knobs; only the fields relevant to the
// chosen type are used.
struct TopologySpec {
  Topology type = Topology::lattice;
  int side = 50;         // lattice side length L (n = L*L)
  int n = 2500;          // node count for non-lattice types
  int k = 4;             // degree for small_world / random_regular
  double p_rewire = 0.1; // small_world rewiring probability
  int m = 2;             // scale_free edges per new node

  int node_count() const { return type == Topology::lattice ? side * side : n; }
};

// Immutable undirected graph. Neighbour lists are stored contiguously
// (offsets + flat adjacency) and sorted per node.
class Network {
 public:
  // L x L torus, von Neumann neighbourhood; every degree is 4.
  static Network lattice(int side);
  // Watts-Strogatz: ring lattice with k neighbours, each original edge
  // rewired with probability p_rewire; edge count is preserved.
  static Network small_world(int n, int k, double p_rewire, Rng& rng);
  // Pairing/configuration model with whole-construction retries until the
  // graph is simple; every degree is exactly k.
  static Network random_regular(int n, int k, Rng& rng);
  // Complete graph.
  static Network well_mixed(int n);
  // Barabasi-Albert preferential attachment, seeded with a complete graph
  // on m+1 nodes.
  static Network scale_free(int n, int m, Rng& rng);

  uint32_t size() const { return n_; }
  std::span<const uint32_t> neighbors(uint32_t i) const {
    return {adj_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  uint32_t degree(uint32_t i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t edge_count() const { return adj_.size() / 2; }
  Topology topology() const { return topology_; }
  int side() const { return side_; }  // 0 unless lattice
  bool is_complete() const { return complete_; }
  // Small-world rewires abandoned because no valid target existed.
  int rewire_fallbacks() const { return rewire_fallbacks_; }

  // Edges as (u,v) with u < v, lexicographically sorted.
  std::vector<std::pair<uint32_t, uint32_t>> edges() const;
  // Plain-text export, one "u v" line per edge.
  void write_edge_list(std::ostream& os) const;

 private:
  Network(uint32_t n, Topology topo,
          const std::vector<std::pair<uint32_t, uint32_t>>& edge_list);
  Network() = default;

  uint32_t n_ = 0;
  Topology topology_ = Topology::lattice;
  int side_ = 0;
  bool complete_ = false;
  int rewire_fallbacks_ = 0;
  std::vector<uint32_t> offsets_;
  std::vector<uint32_t> adj_;
};

// Dispatch on spec.type; rng is consumed only by the random generators.
Network build_network(const TopologySpec& spec, Rng& rng);

void validate_topology_spec(const TopologySpec& spec);  // throws ConfigError

}  // namespace cheaptalk

#endif
