#include "docre/model/grad_check.hpp"

#include <cmath>

namespace docre::model {

GradCheckResult grad_check(const ModelParams<double>& params, const ModelConfig& config,
                           const DocumentBatch& batch, std::span<const int> labels, double epsilon) {
  constexpr double kFloor = 1e-8;
  ModelParams<double> analytic = params.zeros_like();
  DocumentPass<double>(params, config, batch).backward(labels, analytic);

  std::vector<std::pair<std::string, const double*>> grad_data;
  analytic.visit([&](const std::string& name, const auto& t) { grad_data.emplace_back(name, t.data()); });

  ModelParams<double> probe = params;
  GradCheckResult result;
  std::size_t tensor = 0;
  probe.visit([&](const std::string& name, auto& t) {
    const double* grad = grad_data[tensor++].second;
    double worst = 0;
    for (Eigen::Index k = 0; k < t.size(); ++k) {
      const double saved = t.data()[k];
      t.data()[k] = saved + epsilon;
      const double plus = DocumentPass<double>(probe, config, batch).loss(labels);
      t.data()[k] = saved - epsilon;
      const double minus = DocumentPass<double>(probe, config, batch).loss(labels);
      t.data()[k] = saved;
      const double numeric = (plus - minus) / (2 * epsilon);
      const double a = grad[k];
      worst = std::max(worst, std::abs(a - numeric) / std::max(std::abs(a) + std::abs(numeric), kFloor));
    }
    result.per_tensor[name] = worst;
    result.analytic_norm[name] = Eigen::Map<const Vector<double>>(grad, t.size()).norm();
    if (worst >= result.max_relative_error) {
      result.max_relative_error = worst;
      result.worst_tensor = name;
    }
  });
  return result;
}

}  // namespace docre::model
