#include "distress/lda.hpp"

#include <cmath>

#include "distress/errors.hpp"

namespace distress {

GroupStatistics compute_group_stats(const TrainingSet& ts) {
  const auto p = static_cast<Eigen::Index>(ts.p());
  GroupStatistics gs;
  gs.variables = ts.variables;
  for (auto& m : gs.mean) m = Eigen::VectorXd::Zero(p);
  gs.grand_mean = Eigen::VectorXd::Zero(p);

  for (const auto& s : ts.samples) {
    gs.mean[index(s.label)] += s.values;
    gs.n[index(s.label)]++;
    gs.grand_mean += s.values;
  }
  if (gs.n[0] == 0 || gs.n[1] == 0) {
    fail(ErrorKind::InsufficientGroup, "both groups need at least one case");
  }
  for (std::size_t g = 0; g < kGroupCount; ++g) gs.mean[g] /= static_cast<double>(gs.n[g]);
  const auto total = static_cast<double>(ts.size());
  gs.grand_mean /= total;

  Eigen::MatrixXd within = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd overall = Eigen::MatrixXd::Zero(p, p);
  for (const auto& s : ts.samples) {
    const Eigen::VectorXd dw = s.values - gs.mean[index(s.label)];
    const Eigen::VectorXd dt = s.values - gs.grand_mean;
    within.noalias() += dw * dw.transpose();
    overall.noalias() += dt * dt.transpose();
  }
  const double dof = total - static_cast<double>(kGroupCount);
  gs.within_cov = dof > 0 ? Eigen::MatrixXd(within / dof) : within;

  auto to_corr = [p](const Eigen::MatrixXd& c) {
    Eigen::MatrixXd r = c;
    for (Eigen::Index i = 0; i < p; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) {
        const double denom = std::sqrt(c(i, i) * c(j, j));
        r(i, j) = denom > 0 ? c(i, j) / denom : (i == j ? 1.0 : 0.0);
      }
    }
    return r;
  };
  gs.within_corr = to_corr(gs.within_cov);
  gs.total_corr = to_corr(overall);
  return gs;
}

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& s, const Eigen::VectorXd& d) {
  const Eigen::Index n = s.rows();
  if (s.cols() != n || d.size() != n) fail(ErrorKind::Validation, "solve_spd: dimension mismatch");

  // Lower-triangular L with S = L L'.
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double diag = s(j, j);
    for (Eigen::Index k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    // Pivots that collapse relative to the original diagonal are numerically zero.
    if (!(diag > 1e-13 * std::abs(s(j, j))) || !(diag > 0.0)) {
      throw SingularMatrixError(static_cast<std::size_t>(j), diag);
    }
    l(j, j) = std::sqrt(diag);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = 0.5 * (s(i, j) + s(j, i));
      for (Eigen::Index k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }

  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = d[i];
    for (Eigen::Index k = 0; k < i; ++k) v -= l(i, k) * y[k];
    y[i] = v / l(i, i);
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double v = y[i];
    for (Eigen::Index k = i + 1; k < n; ++k) v -= l(k, i) * x[k];
    x[i] = v / l(i, i);
  }
  return x;
}

double DiscriminantModel::coefficient(const std::string& variable) const {
  const auto j = index_of(variables, variable);
  if (j == variables.size()) fail(ErrorKind::Binding, "model has no variable \"" + variable + "\"");
  return coefficients[static_cast<Eigen::Index>(j)];
}

DiscriminantModel fit(const TrainingSet& ts, PriorRule priors) {
  const GroupStatistics gs = compute_group_stats(ts);
  const Eigen::VectorXd diff = gs.mean[1] - gs.mean[0];
  if (diff.lpNorm<Eigen::Infinity>() < 1e-12) {
    fail(ErrorKind::DegenerateSeparation, "group means coincide");
  }

  const Eigen::VectorXd direction = solve_spd(gs.within_cov, diff);
  const double scale = std::sqrt(direction.dot(gs.within_cov * direction));

  DiscriminantModel m;
  m.variables = ts.variables;
  m.coefficients = direction / scale;
  if (m.coefficients.dot(diff) < 0) m.coefficients = -m.coefficients;
  m.constant = -m.coefficients.dot(gs.grand_mean);
  m.n = gs.n;
  m.within_corr = gs.within_corr;
  m.standardized = m.coefficients.cwiseProduct(gs.within_cov.diagonal().cwiseSqrt());

  for (const auto& s : ts.samples) {
    m.training_scores[index(s.label)].push_back(score_aligned(m, s.values));
  }

  double ss_within = 0.0;
  double grand = 0.0;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    const auto& sc = m.training_scores[g];
    double mean = 0.0;
    for (double v : sc) mean += v;
    grand += mean;
    mean /= static_cast<double>(sc.size());
    m.centroid[g] = mean;
    double ss = 0.0;
    for (double v : sc) ss += (v - mean) * (v - mean);
    ss_within += ss;
    m.score_sd[g] = sc.size() > 1 ? std::sqrt(ss / static_cast<double>(sc.size() - 1)) : 0.0;
  }
  grand /= static_cast<double>(ts.size());
  double ss_between = 0.0;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    ss_between += static_cast<double>(m.n[g]) * (m.centroid[g] - grand) * (m.centroid[g] - grand);
  }
  const double dof = static_cast<double>(ts.size()) - static_cast<double>(kGroupCount);
  m.within_score_variance = ss_within / dof;
  m.eigenvalue = ss_between / ss_within;
  m.canonical_correlation = std::sqrt(m.eigenvalue / (1.0 + m.eigenvalue));
  m.wilks_lambda = 1.0 / (1.0 + m.eigenvalue);

  auto& f = m.fisher;
  f.rule = priors;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    f.priors[g] = priors == PriorRule::Equal
                      ? 0.5
                      : static_cast<double>(m.n[g]) / static_cast<double>(ts.size());
    f.weights[g] = solve_spd(gs.within_cov, gs.mean[g]);
    f.constants[g] = -0.5 * gs.mean[g].dot(f.weights[g]) + std::log(f.priors[g]);
  }
  return m;
}

double score_aligned(const DiscriminantModel& model, const Eigen::VectorXd& z) {
  return model.constant + model.coefficients.dot(z);
}

double score(const DiscriminantModel& model, const NamedVector& z) {
  return score_aligned(model, z.aligned_to(model.variables));
}

FisherDecision fisher_classify_aligned(const DiscriminantModel& model, const Eigen::VectorXd& z) {
  const auto& f = model.fisher;
  const double bankrupt = f.weights[0].dot(z) + f.constants[0];
  const double healthy = f.weights[1].dot(z) + f.constants[1];
  if (bankrupt > healthy) return {GroupLabel::Bankrupt, false};
  return {GroupLabel::NonBankrupt, bankrupt == healthy};
}

FisherDecision fisher_classify(const DiscriminantModel& model, const NamedVector& z) {
  return fisher_classify_aligned(model, z.aligned_to(model.variables));
}

}  // namespace distress
