#include "distress/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "distress/errors.hpp"
#include "distress/special_functions.hpp"

namespace distress {

CollinearityReport collinearity_check(const Eigen::MatrixXd& corr,
                                      const std::vector<std::string>& variables,
                                      double threshold) {
  const Eigen::Index p = corr.rows();
  if (corr.cols() != p || static_cast<std::size_t>(p) != variables.size()) {
    fail(ErrorKind::Validation, "correlation matrix shape does not match the variable list");
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      if (std::abs(corr(i, j) - corr(j, i)) > 1e-9) {
        fail(ErrorKind::Validation, "correlation matrix is not symmetric at (" +
                                        variables[static_cast<std::size_t>(i)] + ", " +
                                        variables[static_cast<std::size_t>(j)] + ")");
      }
    }
  }

  CollinearityReport rep{variables, corr, threshold, {}};
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) {
      if (std::abs(corr(i, j)) > threshold) {
        rep.flagged.push_back({variables[static_cast<std::size_t>(i)],
                               variables[static_cast<std::size_t>(j)], corr(i, j)});
      }
    }
  }
  std::stable_sort(rep.flagged.begin(), rep.flagged.end(),
                   [](const auto& a, const auto& b) { return std::abs(a.r) > std::abs(b.r); });
  return rep;
}

WilksResult wilks_test(double eigenvalue, std::size_t n, std::size_t p, std::size_t g,
                       double alpha) {
  if (!(eigenvalue >= 0.0)) fail(ErrorKind::Domain, "eigenvalue must be non-negative");
  const double factor = static_cast<double>(n) - 1.0 - 0.5 * static_cast<double>(p + g);
  if (!(factor > 0.0)) {
    fail(ErrorKind::InsufficientCases, "n - 1 - (p + g)/2 must be positive (n=" +
                                           std::to_string(n) + ", p=" + std::to_string(p) +
                                           ", g=" + std::to_string(g) + ")");
  }
  WilksResult r;
  r.lambda = 1.0 / (1.0 + eigenvalue);
  // -ln(1/(1+l)) = log1p(l)
  r.chi_square = factor * std::log1p(eigenvalue);
  r.df = static_cast<int>(p * (g - 1));
  r.p_value = chi_square_sf(r.chi_square, r.df);
  r.alpha = alpha;
  r.significant = r.p_value < alpha;
  return r;
}

WilksResult wilks_test(const DiscriminantModel& model, std::size_t n, std::size_t p, std::size_t g,
                       double alpha) {
  return wilks_test(model.eigenvalue, n, p, g, alpha);
}

namespace {

struct GroupMoments {
  double mean = 0.0;
  double ss = 0.0;
  std::size_t n = 0;
};

GroupMoments moments(const std::vector<double>& v) {
  GroupMoments m;
  m.n = v.size();
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(m.n);
  for (double x : v) m.ss += (x - m.mean) * (x - m.mean);
  return m;
}

}  // namespace

BoxMResult box_m_test(std::span<const std::vector<double>> scores_by_group, double alpha) {
  const auto g = scores_by_group.size();
  if (g < 2) fail(ErrorKind::InsufficientGroup, "Box's M needs at least two groups");

  std::vector<GroupMoments> mom;
  std::size_t total = 0;
  for (std::size_t i = 0; i < g; ++i) {
    if (scores_by_group[i].size() < 2) {
      fail(ErrorKind::InsufficientGroup, "every group needs at least two scores");
    }
    mom.push_back(moments(scores_by_group[i]));
    if (!(mom.back().ss > 0.0)) {
      fail(ErrorKind::ZeroVariance, "group " + std::to_string(i) + " has zero score variance");
    }
    total += mom.back().n;
  }

  const double gd = static_cast<double>(g);
  const double dof = static_cast<double>(total) - gd;
  double pooled_ss = 0.0;
  double weighted_log = 0.0;
  double inv_sum = 0.0;
  double inv_sq_sum = 0.0;
  for (const auto& m : mom) {
    const double ni = static_cast<double>(m.n) - 1.0;
    pooled_ss += m.ss;
    weighted_log += ni * std::log(m.ss / ni);
    inv_sum += 1.0 / ni;
    inv_sq_sum += 1.0 / (ni * ni);
  }

  // One discriminant function.
  constexpr double pf = 1.0;
  BoxMResult r;
  r.alpha = alpha;
  r.m = std::max(0.0, dof * std::log(pooled_ss / dof) - weighted_log);
  r.c1 = (inv_sum - 1.0 / dof) * (2.0 * pf * pf + 3.0 * pf - 1.0) / (6.0 * (pf + 1.0) * (gd - 1.0));
  r.c2 = (inv_sq_sum - 1.0 / (dof * dof)) * (pf - 1.0) * (pf + 2.0) / (6.0 * (gd - 1.0));
  r.df1 = pf * (pf + 1.0) * (gd - 1.0) / 2.0;

  const double c1sq = r.c1 * r.c1;
  if (r.c2 > c1sq) {
    r.branch = BoxFBranch::PositiveC2;
    r.df2 = (r.df1 + 2.0) / (r.c2 - c1sq);
    r.f_approx = r.m * (1.0 - r.c1 - r.df1 / r.df2) / r.df1;
    r.p_value = f_sf(std::max(0.0, r.f_approx), r.df1, r.df2);
  } else if (r.c2 < c1sq) {
    r.branch = BoxFBranch::NegativeC2;
    r.df2 = (r.df1 + 2.0) / (c1sq - r.c2);
    const double b = r.df2 / (1.0 - r.c1 + 2.0 / r.df2);
    if (b > r.m) {
      r.f_approx = r.df2 * r.m / (r.df1 * (b - r.m));
      r.p_value = f_sf(r.f_approx, r.df1, r.df2);
    } else {
      // M beyond the approximation's range: heterogeneity is extreme.
      r.f_approx = std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
  } else {
    r.branch = BoxFBranch::Limit;
    r.df2 = std::numeric_limits<double>::infinity();
    r.f_approx = r.m * (1.0 - r.c1) / r.df1;
    r.p_value = chi_square_sf(r.m * (1.0 - r.c1), r.df1);
  }
  r.homogeneous = r.p_value >= alpha;
  return r;
}

double score_eigenvalue(std::span<const std::vector<double>> scores_by_group) {
  double grand = 0.0;
  std::size_t total = 0;
  std::vector<GroupMoments> mom;
  for (const auto& v : scores_by_group) {
    if (v.empty()) fail(ErrorKind::InsufficientGroup, "empty score group");
    mom.push_back(moments(v));
    grand += mom.back().mean * static_cast<double>(v.size());
    total += v.size();
  }
  grand /= static_cast<double>(total);
  double between = 0.0;
  double within = 0.0;
  for (const auto& m : mom) {
    between += static_cast<double>(m.n) * (m.mean - grand) * (m.mean - grand);
    within += m.ss;
  }
  if (!(within > 0.0)) fail(ErrorKind::ZeroVariance, "scores have no within-group spread");
  return between / within;
}

CanonicalSummary canonical_summary(double eigenvalue) {
  CanonicalSummary s;
  s.eigenvalue = eigenvalue;
  s.r_squared = eigenvalue / (1.0 + eigenvalue);
  s.canonical_correlation = std::sqrt(s.r_squared);
  return s;
}

CanonicalSummary canonical_summary(const DiscriminantModel& model) {
  return canonical_summary(model.eigenvalue);
}

}  // namespace distress
