#include "distress/normalization.hpp"

#include <cmath>

#include "distress/errors.hpp"

namespace distress {

NormalizationStats fit_normalizer(const TrainingSet& ts) {
  const auto p = static_cast<Eigen::Index>(ts.p());
  const auto n = static_cast<double>(ts.size());
  if (ts.size() < 2) fail(ErrorKind::InsufficientCases, "need at least 2 samples to normalize");

  NormalizationStats stats{ts.variables, Eigen::VectorXd::Zero(p), Eigen::VectorXd::Zero(p)};
  for (const auto& s : ts.samples) stats.mean += s.values;
  stats.mean /= n;
  for (const auto& s : ts.samples) stats.sd += (s.values - stats.mean).cwiseAbs2();
  stats.sd = (stats.sd / (n - 1.0)).cwiseSqrt();

  for (Eigen::Index j = 0; j < p; ++j) {
    // Relative test so that columns in any unit are judged alike.
    const double scale = std::max(std::abs(stats.mean[j]), 1.0);
    if (!(stats.sd[j] > 1e-14 * scale)) {
      fail(ErrorKind::ZeroVariance, "variable \"" + ts.variables[static_cast<std::size_t>(j)] +
                                        "\" is constant across the training set");
    }
  }
  return stats;
}

NamedVector apply(const NormalizationStats& stats, const NamedVector& v) {
  const Eigen::VectorXd x = v.aligned_to(stats.variables);
  return {stats.variables, ((x - stats.mean).array() / stats.sd.array()).matrix()};
}

NamedVector apply(const NormalizationStats& stats, const RatioVector& v) {
  return apply(stats, NamedVector(ratio_names(), v.to_vector()));
}

TrainingSet normalize(const NormalizationStats& stats, const TrainingSet& ts) {
  if (stats.variables != ts.variables) {
    fail(ErrorKind::Binding, "normalization stats and training set use different variables");
  }
  TrainingSet out = ts;
  for (auto& s : out.samples) {
    s.values = ((s.values - stats.mean).array() / stats.sd.array()).matrix();
  }
  return out;
}

}  // namespace distress
