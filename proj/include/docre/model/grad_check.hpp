#pragma once

#include <map>
#include <span>
#include <string>

#include "docre/model/network.hpp"

namespace docre::model {

struct GradCheckResult {
  double max_relative_error = 0;
  std::string worst_tensor;
  std::map<std::string, double> per_tensor;  // max relative error per tensor
  std::map<std::string, double> analytic_norm;
};

// Compares backward() against central finite differences of loss() for every
// parameter entry. Relative error per entry is |a - n| / max(|a| + |n|, floor)
// with floor 1e-8, so entries where both gradients vanish count as exact.
GradCheckResult grad_check(const ModelParams<double>& params, const ModelConfig& config,
                           const DocumentBatch& batch, std::span<const int> labels,
                           double epsilon = 1e-4);

}  // namespace docre::model
