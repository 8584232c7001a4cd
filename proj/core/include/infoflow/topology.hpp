#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace infoflow {

// Directed graph over N variables; edge(j, i) means flow from j to i. The
// diagonal is never stored.
class DependencyGraph {
 public:
  explicit DependencyGraph(std::size_t n_vars = 0);
  // Throws IndexOutOfRange for out-of-range or self edges.
  DependencyGraph(std::size_t n_vars, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t n_vars() const noexcept { return n_; }
  bool edge(std::size_t from, std::size_t to) const;
  void set_edge(std::size_t from, std::size_t to, bool present = true);
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t edge_count() const;

  // Off-diagonal entries read row-major (row = source); the first entry is
  // the most significant bit.
  std::uint64_t code() const;
  static DependencyGraph from_code(std::size_t n_vars, std::uint64_t code);
  // Image under node relabelling v -> perm[v].
  DependencyGraph permuted(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const DependencyGraph&, const DependencyGraph&) = default;

 private:
  std::size_t index(std::size_t from, std::size_t to) const;
  std::size_t n_;
  std::vector<std::uint8_t> adjacency_;
};

void to_json(nlohmann::json& j, const DependencyGraph& g);
void from_json(const nlohmann::json& j, DependencyGraph& g);

struct TopologyClass {
  DependencyGraph representative;  // smallest code in the class
  std::uint64_t class_size = 0;
};

inline constexpr std::size_t kMaxTopologyVars = 5;

// One class per orbit of the off-diagonal matrices under simultaneous
// row/column permutation, ordered by representative code. Throws
// InvalidArgument below 2 variables and NTooLarge above kMaxTopologyVars.
std::vector<TopologyClass> enumerate_topologies(std::size_t n_vars);

// Seeded subset of `limit` indices out of [0, count), ascending. Returns all
// indices when limit >= count.
std::vector<std::size_t> select_cases(std::size_t count, std::size_t limit, std::uint64_t seed);

}  // namespace infoflow
