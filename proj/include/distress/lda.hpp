#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "distress/dataset.hpp"
#include "distress/named_vector.hpp"

namespace distress {

/// Group means and the pooled within-group covariance (divisor N - g).
struct GroupStatistics {
  std::vector<std::string> variables;
  std::array<Eigen::VectorXd, kGroupCount> mean;  // indexed by GroupLabel
  std::array<std::size_t, kGroupCount> n{};
  Eigen::VectorXd grand_mean;
  Eigen::MatrixXd within_cov;
  Eigen::MatrixXd within_corr;
  /// Correlations over all cases ignoring groups. Kept for comparison only.
  Eigen::MatrixXd total_corr;
};

GroupStatistics compute_group_stats(const TrainingSet& ts);

/// Solves S v = d through a Cholesky factorization. Throws SingularMatrixError
/// naming the first non-positive pivot.
Eigen::VectorXd solve_spd(const Eigen::MatrixXd& s, const Eigen::VectorXd& d);

enum class PriorRule { Equal, Proportional };

/// Per-group classification functions w_g' z + c_g.
struct FisherFunctions {
  PriorRule rule = PriorRule::Equal;
  std::array<double, kGroupCount> priors{0.5, 0.5};
  std::array<Eigen::VectorXd, kGroupCount> weights;
  std::array<double, kGroupCount> constants{};
};

/// A fitted two-group canonical discriminant function. Scores are
/// a + b' z, scaled so the pooled within-group score variance is one and
/// oriented so the healthy centroid lies above the bankrupt one.
struct DiscriminantModel {
  std::vector<std::string> variables;
  Eigen::VectorXd coefficients;
  double constant = 0.0;
  Eigen::VectorXd standardized;
  std::array<double, kGroupCount> centroid{};
  std::array<std::size_t, kGroupCount> n{};
  std::array<double, kGroupCount> score_sd{};
  double within_score_variance = 1.0;
  double eigenvalue = 0.0;
  double canonical_correlation = 0.0;
  double wilks_lambda = 1.0;
  FisherFunctions fisher;
  /// In-sample scores by group, needed for Box's M on reload.
  std::array<std::vector<double>, kGroupCount> training_scores;
  /// Pooled within-group correlations of the predictors.
  Eigen::MatrixXd within_corr;

  double coefficient(const std::string& variable) const;
  std::size_t total() const { return n[0] + n[1]; }
};

DiscriminantModel fit(const TrainingSet& ts, PriorRule priors = PriorRule::Equal);

/// a + sum_j b_j z_j with z matched to the model by variable name.
double score(const DiscriminantModel& model, const NamedVector& z);

/// Same, for values already in the model's variable order.
double score_aligned(const DiscriminantModel& model, const Eigen::VectorXd& z);

struct FisherDecision {
  GroupLabel label = GroupLabel::NonBankrupt;
  bool tie = false;
};

/// Group with the larger classification function. Exact ties go to
/// NonBankrupt with the tie flag set.
FisherDecision fisher_classify(const DiscriminantModel& model, const NamedVector& z);
FisherDecision fisher_classify_aligned(const DiscriminantModel& model, const Eigen::VectorXd& z);

}  // namespace distress
