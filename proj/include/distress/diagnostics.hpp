#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "distress/lda.hpp"

namespace distress {

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr double kDefaultCollinearityThreshold = 0.8;

struct CollinearPair {
  std::string first;
  std::string second;
  double r = 0.0;
};

struct CollinearityReport {
  std::vector<std::string> variables;
  Eigen::MatrixXd matrix;
  double threshold = kDefaultCollinearityThreshold;
  /// Off-diagonal pairs with |r| > threshold, largest |r| first.
  std::vector<CollinearPair> flagged;
};

CollinearityReport collinearity_check(const Eigen::MatrixXd& corr,
                                      const std::vector<std::string>& variables,
                                      double threshold = kDefaultCollinearityThreshold);

struct WilksResult {
  double lambda = 1.0;
  double chi_square = 0.0;
  int df = 0;
  double p_value = 1.0;
  double alpha = kDefaultAlpha;
  /// Group means differ: p_value < alpha.
  bool significant = false;
};

/// Bartlett's chi-square approximation -(n - 1 - (p + g)/2) ln(Lambda).
WilksResult wilks_test(double eigenvalue, std::size_t n, std::size_t p, std::size_t g,
                       double alpha = kDefaultAlpha);
WilksResult wilks_test(const DiscriminantModel& model, std::size_t n, std::size_t p, std::size_t g,
                       double alpha = kDefaultAlpha);

enum class BoxFBranch {
  PositiveC2,  // c2 > c1^2
  NegativeC2,  // c2 < c1^2
  Limit,       // c2 == c1^2, df2 infinite
};

struct BoxMResult {
  double m = 0.0;
  double f_approx = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
  double p_value = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  BoxFBranch branch = BoxFBranch::NegativeC2;
  double alpha = kDefaultAlpha;
  /// Equal variances not rejected: p_value >= alpha.
  bool homogeneous = true;
};

/// Box's M on one discriminant function: compares the per-group score
/// variances and converts M with Box's F approximation.
BoxMResult box_m_test(std::span<const std::vector<double>> scores_by_group,
                      double alpha = kDefaultAlpha);

/// Between-to-within sum-of-squares ratio of grouped scores.
double score_eigenvalue(std::span<const std::vector<double>> scores_by_group);

struct CanonicalSummary {
  double eigenvalue = 0.0;
  double percent_variance = 100.0;
  double cumulative_percent = 100.0;
  double canonical_correlation = 0.0;
  double r_squared = 0.0;
};

CanonicalSummary canonical_summary(double eigenvalue);
CanonicalSummary canonical_summary(const DiscriminantModel& model);

}  // namespace distress
