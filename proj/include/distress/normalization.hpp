#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "distress/dataset.hpp"
#include "distress/named_vector.hpp"

namespace distress {

/// Per-variable z-score parameters fitted on the pooled training set
/// (both groups together, sample sd with divisor n - 1).
struct NormalizationStats {
  std::vector<std::string> variables;
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;
};

NormalizationStats fit_normalizer(const TrainingSet& ts);

/// z_j = (v_j - mean_j) / sd_j, bound to the stats' variable names. No clipping.
NamedVector apply(const NormalizationStats& stats, const NamedVector& v);
NamedVector apply(const NormalizationStats& stats, const RatioVector& v);

/// The training set with every sample standardized.
TrainingSet normalize(const NormalizationStats& stats, const TrainingSet& ts);

}  // namespace distress
