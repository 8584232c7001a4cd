#pragma once

#include <vector>

#include "infoflow/flow_network.hpp"
#include "infoflow/lattice.hpp"

namespace infoflow {

// Cumulative flows over the full histories of an exact N x T system. Every
// step t conditions on the complete past 1..t-1.
struct CumulativeNetwork {
  std::size_t n_vars = 0;
  std::vector<double> entropy_rate;  // H(X_i^{1..T})
  std::vector<double> free_entropy;
  Matrix mte;  // [j][i]: j -> i
  Matrix pte;
  Matrix pair_residual;
  std::vector<double> single_residual;
  double global_residual = 0.0;
  double total_correlation = 0.0;
  double joint_entropy = 0.0;
  // Sum over t of TC(X_1^t, ..., X_N^t | full past).
  double simultaneous_correlation = 0.0;
  // I(X_0; X_1) over full histories; only meaningful for N = 2.
  double mutual_information = 0.0;
};

CumulativeNetwork cumulative_network(const JointTable& system, const SystemLayout& layout);

// Evaluates the network theorems on an exact system. Hard reports are
// regression invariants; soft reports carry decomposition gaps for study.
// Throws SystemTooLarge above kMaxVerificationCells.
std::vector<VerificationReport> verify_network_theorems(const JointTable& system,
                                                        const SystemLayout& layout);

inline constexpr double kInequalityTolerance = 1e-10;

}  // namespace infoflow
