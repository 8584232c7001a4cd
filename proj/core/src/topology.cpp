#include "infoflow/topology.hpp"

#include <algorithm>
#include <numeric>

#include "infoflow/error.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

DependencyGraph::DependencyGraph(std::size_t n_vars) : n_(n_vars), adjacency_(n_vars * n_vars, 0) {}

DependencyGraph::DependencyGraph(std::size_t n_vars,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : DependencyGraph(n_vars) {
  for (const auto& [from, to] : edges) set_edge(from, to);
}

std::size_t DependencyGraph::index(std::size_t from, std::size_t to) const {
  if (from >= n_ || to >= n_ || from == to) {
    throw Error(Errc::kIndexOutOfRange, "edge (" + std::to_string(from) + ", " + std::to_string(to) +
                                            ") invalid for " + std::to_string(n_) + " variables");
  }
  return from * n_ + to;
}

bool DependencyGraph::edge(std::size_t from, std::size_t to) const {
  return adjacency_[index(from, to)] != 0;
}

void DependencyGraph::set_edge(std::size_t from, std::size_t to, bool present) {
  adjacency_[index(from, to)] = present ? 1 : 0;
}

std::vector<std::pair<std::size_t, std::size_t>> DependencyGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (i != j && edge(j, i)) out.emplace_back(j, i);
    }
  }
  return out;
}

std::size_t DependencyGraph::edge_count() const { return edges().size(); }

std::uint64_t DependencyGraph::code() const {
  std::uint64_t c = 0;
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t k = 0; k < n_; ++k) {
      if (r != k) c = (c << 1) | (edge(r, k) ? 1u : 0u);
    }
  }
  return c;
}

DependencyGraph DependencyGraph::from_code(std::size_t n_vars, std::uint64_t code) {
  DependencyGraph g(n_vars);
  const std::size_t bits = n_vars * (n_vars - (n_vars > 0 ? 1 : 0));
  if (bits < 64 && (code >> bits) != 0) throw Error(Errc::kInvalidArgument, "code has too many bits");
  std::size_t e = bits;
  for (std::size_t r = 0; r < n_vars; ++r) {
    for (std::size_t k = 0; k < n_vars; ++k) {
      if (r == k) continue;
      --e;
      g.set_edge(r, k, ((code >> e) & 1u) != 0);
    }
  }
  return g;
}

DependencyGraph DependencyGraph::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw Error(Errc::kShapeMismatch, "permutation length differs from n_vars");
  DependencyGraph g(n_);
  for (const auto& [from, to] : edges()) g.set_edge(perm[from], perm[to]);
  return g;
}

void to_json(nlohmann::json& j, const DependencyGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [from, to] : g.edges()) edges.push_back({from, to});
  j = nlohmann::json{{"n_vars", g.n_vars()}, {"edges", edges}};
}

void from_json(const nlohmann::json& j, DependencyGraph& g) {
  try {
    DependencyGraph out(j.at("n_vars").get<std::size_t>());
    for (const auto& e : j.at("edges")) out.set_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    g = std::move(out);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParseError, std::string("malformed graph JSON: ") + e.what());
  }
}

std::vector<TopologyClass> enumerate_topologies(std::size_t n_vars) {
  if (n_vars < 2) throw Error(Errc::kInvalidArgument, "topologies need at least two variables");
  if (n_vars > kMaxTopologyVars) {
    throw Error(Errc::kNTooLarge, "topology enumeration is limited to " +
                                      std::to_string(kMaxTopologyVars) + " variables");
  }
  const std::size_t bits = n_vars * (n_vars - 1);
  const std::uint64_t total = std::uint64_t{1} << bits;

  // Bit position of entry (r, k) in the code, for fast relabelling.
  std::vector<std::size_t> bit_of(n_vars * n_vars, 0);
  std::vector<std::pair<std::size_t, std::size_t>> entry_of;
  std::size_t e = bits;
  for (std::size_t r = 0; r < n_vars; ++r) {
    for (std::size_t k = 0; k < n_vars; ++k) {
      if (r == k) continue;
      bit_of[r * n_vars + k] = --e;
      entry_of.emplace_back(r, k);
    }
  }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n_vars);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<bool> visited(total, false);
  std::vector<TopologyClass> classes;
  std::vector<std::uint64_t> images;
  for (std::uint64_t c = 0; c < total; ++c) {
    if (visited[c]) continue;
    images.clear();
    for (const auto& p : perms) {
      std::uint64_t image = 0;
      for (std::size_t idx = 0; idx < entry_of.size(); ++idx) {
        if ((c >> (bits - 1 - idx)) & 1u) {
          const auto [r, k] = entry_of[idx];
          image |= std::uint64_t{1} << bit_of[p[r] * n_vars + p[k]];
        }
      }
      images.push_back(image);
    }
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    for (std::uint64_t image : images) visited[image] = true;
    classes.push_back({DependencyGraph::from_code(n_vars, c), images.size()});
  }
  return classes;
}

std::vector<std::size_t> select_cases(std::size_t count, std::size_t limit, std::uint64_t seed) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  if (limit >= count) return idx;
  Rng rng(seed);
  for (std::size_t k = 0; k < limit; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.below(count - k));
    std::swap(idx[k], idx[pick]);
  }
  idx.resize(limit);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace infoflow
