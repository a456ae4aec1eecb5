#include "cheaptalk/network.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "cheaptalk/errors.hpp"

namespace cheaptalk {

const char* topology_name(Topology t) {
  switch (t) {
    case Topology::lattice: return "lattice";
    case Topology::small_world: return "small_world";
    case Topology::random_regular: return "random_regular";
    case Topology::well_mixed: return "well_mixed";
    case Topology::scale_free: return "scale_free";
  }
  return "?";
}

Topology topology_from_name(const std::string& name) {
  if (name == "lattice") return Topology::lattice;
  if (name == "small_world") return Topology::small_world;
  if (name == "random_regular") return Topology::random_regular;
  if (name == "well_mixed") return Topology::well_mixed;
  if (name == "scale_free") return Topology::scale_free;
  throw ConfigError("unknown topology '" + name +
                    "' (expected lattice, small_world, random_regular, "
                    "well_mixed, or scale_free)");
}

Network::Network(uint32_t n, Topology topo,
                 const std::vector<std::pair<uint32_t, uint32_t>>& edge_list)
    : n_(n), topology_(topo) {
  offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edge_list) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adj_.resize(2 * edge_list.size());
  std::vector<uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edge_list) {
    adj_[cursor[u]++] = v;
    adj_[cursor[v]++] = u;
  }
  for (uint32_t i = 0; i < n; ++i) {
    std::sort(adj_.begin() + offsets_[i], adj_.begin() + offsets_[i + 1]);
  }
}

std::vector<std::pair<uint32_t, uint32_t>> Network::edges() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  out.reserve(edge_count());
  for (uint32_t u = 0; u < n_; ++u) {
    for (uint32_t v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Network::write_edge_list(std::ostream& os) const {
  for (const auto& [u, v] : edges()) {
    os << u << ' ' << v << '\n';
  }
}

Network Network::lattice(int side) {
  if (side < 3) {
    throw ConfigError("lattice side must be >= 3 (smaller tori degenerate "
                      "into duplicate edges)");
  }
  const auto L = static_cast<uint32_t>(side);
  std::vector<std::pair<uint32_t, uint32_t>> edge_list;
  edge_list.reserve(static_cast<std::size_t>(2) * L * L);
  for (uint32_t row = 0; row < L; ++row) {
    for (uint32_t col = 0; col < L; ++col) {
      const uint32_t id = row * L + col;
      edge_list.emplace_back(id, row * L + (col + 1) % L);  // right
      edge_list.emplace_back(id, ((row + 1) % L) * L + col);  // down
    }
  }
  Network net(L * L, Topology::lattice, edge_list);
  net.side_ = side;
  return net;
}

Network Network::small_world(int n, int k, double p_rewire, Rng& rng) {
  if (k < 2 || k % 2 != 0 || n <= k) {
    throw ConfigError("small_world requires n > k >= 2 with k even");
  }
  if (p_rewire < 0.0 || p_rewire > 1.0) {
    throw ConfigError("small_world p_rewire must be in [0,1]");
  }
  const auto nn = static_cast<uint32_t>(n);
  std::vector<std::unordered_set<uint32_t>> adj(nn);
  auto connect = [&](uint32_t a, uint32_t b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  auto disconnect = [&](uint32_t a, uint32_t b) {
    adj[a].erase(b);
    adj[b].erase(a);
  };
  for (int d = 1; d <= k / 2; ++d) {
    for (uint32_t i = 0; i < nn; ++i) connect(i, (i + d) % nn);
  }

  int fallbacks = 0;
  for (int d = 1; d <= k / 2; ++d) {
    for (uint32_t i = 0; i < nn; ++i) {
      if (rng.uniform01() >= p_rewire) continue;
      const uint32_t old_target = (i + d) % nn;
      // Rejection-sample a fresh endpoint; give up once candidates are
      // clearly exhausted and keep the original edge.
      bool rewired = false;
      for (uint32_t attempt = 0; attempt < 4 * nn; ++attempt) {
        const auto t = static_cast<uint32_t>(rng.uniform_below(nn));
        if (t == i || adj[i].contains(t)) continue;
        disconnect(i, old_target);
        connect(i, t);
        rewired = true;
        break;
      }
      if (!rewired) ++fallbacks;
    }
  }

  std::vector<std::pair<uint32_t, uint32_t>> edge_list;
  for (uint32_t u = 0; u < nn; ++u) {
    for (uint32_t v : adj[u]) {
      if (u < v) edge_list.emplace_back(u, v);
    }
  }
  Network net(nn, Topology::small_world, edge_list);
  net.rewire_fallbacks_ = fallbacks;
  return net;
}

Network Network::random_regular(int n, int k, Rng& rng) {
  if (k <= 0 || k >= n || (static_cast<int64_t>(n) * k) % 2 != 0) {
    throw ConfigError("random_regular requires 0 < k < n with n*k even");
  }
  const auto nn = static_cast<uint32_t>(n);
  std::vector<uint32_t> stubs(static_cast<std::size_t>(n) * k);
  for (uint32_t i = 0; i < nn; ++i) {
    for (int c = 0; c < k; ++c) stubs[static_cast<std::size_t>(i) * k + c] = i;
  }

  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Fisher-Yates with our own rng, then pair consecutive stubs.
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      const auto j = rng.uniform_below(i + 1);
      std::swap(stubs[i], stubs[j]);
    }
    std::vector<std::pair<uint32_t, uint32_t>> edge_list;
    edge_list.reserve(stubs.size() / 2);
    std::unordered_set<uint64_t> seen;
    seen.reserve(stubs.size());
    bool simple = true;
    for (std::size_t s = 0; s < stubs.size(); s += 2) {
      uint32_t a = stubs[s], b = stubs[s + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      const uint64_t key = (static_cast<uint64_t>(a) << 32) | b;
      if (!seen.insert(key).second) {
        simple = false;
        break;
      }
      edge_list.emplace_back(a, b);
    }
    if (simple) return Network(nn, Topology::random_regular, edge_list);
  }
  throw ConfigError("random_regular pairing failed to produce a simple graph "
                    "after 1000 attempts; parameters look pathological");
}

Network Network::well_mixed(int n) {
  if (n < 2) throw ConfigError("well_mixed requires n >= 2");
  const auto nn = static_cast<uint32_t>(n);
  // Build the CSR arrays directly; the edge set is implied.
  Network net;
  net.n_ = nn;
  net.topology_ = Topology::well_mixed;
  net.complete_ = true;
  net.offsets_.resize(nn + 1);
  for (uint32_t i = 0; i <= nn; ++i) {
    net.offsets_[i] = i * (nn - 1);
  }
  net.adj_.resize(static_cast<std::size_t>(nn) * (nn - 1));
  std::size_t pos = 0;
  for (uint32_t i = 0; i < nn; ++i) {
    for (uint32_t j = 0; j < nn; ++j) {
      if (j != i) net.adj_[pos++] = j;
    }
  }
  return net;
}

Network Network::scale_free(int n, int m, Rng& rng) {
  if (m < 1 || n <= m) throw ConfigError("scale_free requires n > m >= 1");
  const auto nn = static_cast<uint32_t>(n);
  const auto mm = static_cast<uint32_t>(m);
  std::vector<std::pair<uint32_t, uint32_t>> edge_list;
  // Attachment targets weighted by degree: every edge endpoint is listed once.
  std::vector<uint32_t> targets;
  for (uint32_t a = 0; a < mm + 1; ++a) {
    for (uint32_t b = a + 1; b < mm + 1; ++b) {
      edge_list.emplace_back(a, b);
      targets.push_back(a);
      targets.push_back(b);
    }
  }
  std::vector<uint32_t> chosen;
  for (uint32_t v = mm + 1; v < nn; ++v) {
    chosen.clear();
    while (chosen.size() < mm) {
      const uint32_t t = targets[rng.uniform_below(targets.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
        chosen.push_back(t);
      }
    }
    for (uint32_t t : chosen) {
      edge_list.emplace_back(t, v);
      targets.push_back(t);
      targets.push_back(v);
    }
  }
  return Network(nn, Topology::scale_free, edge_list);
}

void validate_topology_spec(const TopologySpec& spec) {
  switch (spec.type) {
    case Topology::lattice:
      if (spec.side < 3) throw ConfigError("lattice side must be >= 3");
      break;
    case Topology::small_world:
      if (spec.k < 2 || spec.k % 2 != 0 || spec.n <= spec.k) {
        throw ConfigError("small_world requires n > k >= 2 with k even");
      }
      if (spec.p_rewire < 0.0 || spec.p_rewire > 1.0) {
        throw ConfigError("small_world p_rewire must be in [0,1]");
      }
      break;
    case Topology::random_regular:
      if (spec.k <= 0 || spec.k >= spec.n ||
          (static_cast<int64_t>(spec.n) * spec.k) % 2 != 0) {
        throw ConfigError("random_regular requires 0 < k < n with n*k even");
      }
      break;
    case Topology::well_mixed:
      if (spec.n < 2) throw ConfigError("well_mixed requires n >= 2");
      break;
    case Topology::scale_free:
      if (spec.m < 1 || spec.n <= spec.m) {
        throw ConfigError("scale_free requires n > m >= 1");
      }
      break;
  }
}

Network build_network(const TopologySpec& spec, Rng& rng) {
  validate_topology_spec(spec);
  switch (spec.type) {
    case Topology::lattice: return Network::lattice(spec.side);
    case Topology::small_world:
      return Network::small_world(spec.n, spec.k, spec.p_rewire, rng);
    case Topology::random_regular:
      return Network::random_regular(spec.n, spec.k, rng);
    case Topology::well_mixed: return Network::well_mixed(spec.n);
    case Topology::scale_free: return Network::scale_free(spec.n, spec.m, rng);
  }
  throw ConfigError("unreachable topology kind");
}

}  // namespace cheaptalk
