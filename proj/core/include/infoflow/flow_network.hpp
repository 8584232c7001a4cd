#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoflow/process_model.hpp"

namespace infoflow {

enum class Conditioning { kPairwise, kMultivariate };

std::string_view to_string(Conditioning mode);
// Accepts "pte"/"mte" and "PAIRWISE"/"MULTIVARIATE"; throws InvalidArgument.
Conditioning parse_conditioning(std::string_view text);

// Per-step flows in bits/step, evaluated on the window table.
double entropy_rate(const ProcessModel& model, std::size_t i);
double free_entropy(const ProcessModel& model, std::size_t i);
// Flow from j to i. Throws SelfPair when i == j.
double transfer_entropy(const ProcessModel& model, std::size_t j, std::size_t i, Conditioning mode);
double residual_pair(const ProcessModel& model, std::size_t i, std::size_t j);
// Signed; never clamped.
double residual_single(const ProcessModel& model, std::size_t i);
// Zero for N < 3.
double residual_global(const ProcessModel& model);
double total_correlation_rate(const ProcessModel& model);

using Matrix = std::vector<std::vector<double>>;

struct InfoNetwork {
  std::size_t n_vars = 0;
  Conditioning mode = Conditioning::kMultivariate;
  std::vector<double> entropy_rate;
  std::vector<double> free_entropy;
  // transfer[j][i] is the flow j -> i; diagonal is 0 and meaningless.
  Matrix transfer;
  Matrix pair_residual;
  std::vector<double> single_residual;
  double global_residual = 0.0;
  double total_correlation = 0.0;
};

InfoNetwork build_network(const ProcessModel& model, Conditioning mode);

void to_json(nlohmann::json& j, const InfoNetwork& network);

}  // namespace infoflow
