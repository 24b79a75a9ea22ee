#include "distress/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "distress/errors.hpp"

namespace distress {

using json = nlohmann::ordered_json;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pct(double fraction) { return fixed(100.0 * fraction, 0) + "%"; }

std::string pad(const std::string& s, std::size_t width, bool left = false) {
  // Glyphs are multi-byte; count code points for alignment.
  std::size_t len = 0;
  for (unsigned char c : s) len += (c & 0xC0) != 0x80;
  if (len >= width) return s;
  const std::string fill(width - len, ' ');
  return left ? s + fill : fill + s;
}

std::string group_name(GroupLabel g) { return g == GroupLabel::Bankrupt ? "Bankrupt" : "Non bankrupt"; }

std::string verdict(const WilksResult& w) {
  return w.significant ? "discriminant function is significant"
                       : "discriminant function is not significant";
}

std::string verdict(const BoxMResult& b) {
  return b.homogeneous ? "variance of each group is homogenous"
                       : "variance of the groups is not homogenous";
}

json zones_json(const ClassificationZones& z) {
  json j;
  j["cutoff"] = z.cutoff;
  if (z.grey) j["grey"] = json{{"lo", z.grey->lo}, {"hi", z.grey->hi}};
  else j["grey"] = nullptr;
  j["source"] = to_string(z.source);
  return j;
}

json year_json(const YearEvaluation& y) {
  json banks = json::array();
  for (const auto& b : y.banks) {
    banks.push_back(json{{"bank", b.bank},
                         {"score", b.score},
                         {"zone", to_string(b.zone)},
                         {"actual", to_string(b.actual)}});
  }
  return json{{"year", y.year},
              {"counts", json{{"bankrupt", y.count(ZoneLabel::Bankrupt)},
                              {"grey", y.count(ZoneLabel::Grey)},
                              {"nonbankrupt", y.count(ZoneLabel::NonBankrupt)}}},
              {"hits", y.hits},
              {"total", y.total},
              {"type1", y.type1_rate},
              {"type2", y.type2_rate},
              {"type1_count", y.type1_count},
              {"type2_count", y.type2_count},
              {"actual_bankrupt", y.actual_bankrupt},
              {"actual_nonbankrupt", y.actual_nonbankrupt},
              {"accuracy", y.accuracy},
              {"banks", banks}};
}

void year_table(std::ostringstream& os, const std::vector<YearEvaluation>& years, bool with_grey) {
  constexpr std::size_t kLabel = 22;
  constexpr std::size_t kCol = 7;
  os << pad("", kLabel, true);
  for (auto it = years.rbegin(); it != years.rend(); ++it) os << pad(std::to_string(it->year), kCol);
  os << '\n';
  auto row = [&](const std::string& label, auto cell) {
    os << pad(label, kLabel, true);
    for (auto it = years.rbegin(); it != years.rend(); ++it) os << pad(cell(*it), kCol);
    os << '\n';
  };
  auto count = [](ZoneLabel z) {
    return [z](const YearEvaluation& y) { return std::to_string(y.count(z)); };
  };
  row("Bankrupt", count(ZoneLabel::Bankrupt));
  if (with_grey) row("Grey zone", count(ZoneLabel::Grey));
  row("Nonbankrupt", count(ZoneLabel::NonBankrupt));
  row("Hit numbers", [](const auto& y) { return std::to_string(y.hits); });
  row("Total", [](const auto& y) { return std::to_string(y.total); });
  if (with_grey) row("Grey zone (%)", [](const auto& y) { return pct(y.grey_rate); });
  row("Type I error (%)", [](const auto& y) { return pct(y.type1_rate); });
  row("Type II error (%)", [](const auto& y) { return pct(y.type2_rate); });
  row(with_grey ? "Accuracy (%)" : "Accuracy (cut-off)", [](const auto& y) { return pct(y.accuracy); });
}

}  // namespace

DiagnosticBattery run_diagnostics(const DiscriminantModel& model, double alpha,
                                  double collinearity_threshold) {
  DiagnosticBattery d;
  d.collinearity = collinearity_check(model.within_corr, model.variables, collinearity_threshold);
  d.wilks = wilks_test(model, model.total(), model.variables.size(), kGroupCount, alpha);
  if (model.training_scores[0].size() >= 2 && model.training_scores[1].size() >= 2) {
    try {
      d.box_m = box_m_test(model.training_scores, alpha);
    } catch (const Error& e) {
      d.box_m_skipped = e.what();
    }
  } else {
    d.box_m_skipped = "model file carries fewer than two training scores per group";
  }
  d.canonical = canonical_summary(model);
  return d;
}

std::string format_score(double score, ZoneLabel zone) {
  return std::string(zone_glyph(zone)) + " " + fixed(100.0 * score, 2) + "%";
}

std::string render_fit_text(const ModelFile& file, const TrainingSet& raw, const TrainingSet& tsz,
                            const ConfusionMatrix& cm) {
  const auto& m = file.model;
  std::ostringstream os;
  os << "Case processing summary\n";
  for (const auto& c : case_processing_summary(raw)) {
    os << "  " << pad(std::string(display_name(c.variable)), 7, true) << pad(group_name(c.group), 14, true)
       << "valid " << c.valid << " (" << fixed(c.valid_percent(), 0) << "%)  missing " << c.missing
       << " (" << fixed(c.missing_percent(), 0) << "%)\n";
  }

  os << "\nGroup statistics (z-scores, all cases)\n";
  const auto n = static_cast<double>(tsz.size());
  for (std::size_t j = 0; j < tsz.p(); ++j) {
    double mean = 0.0;
    for (const auto& s : tsz.samples) mean += s.values[static_cast<Eigen::Index>(j)];
    mean /= n;
    double ss = 0.0;
    for (const auto& s : tsz.samples) {
      const double d = s.values[static_cast<Eigen::Index>(j)] - mean;
      ss += d * d;
    }
    os << "  " << pad(std::string(display_name(tsz.variables[j])), 7, true) << " mean "
       << pad(fixed(std::abs(mean) < 5e-13 ? 0.0 : mean, 7), 11) << "  sd " << fixed(std::sqrt(ss / (n - 1)), 8)
       << "  N " << tsz.size() << '\n';
  }

  os << "\nCanonical discriminant function coefficients\n";
  os << "  " << pad("", 7, true) << pad("unstd.", 10) << pad("std.", 10) << '\n';
  for (std::size_t j = 0; j < m.variables.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    os << "  " << pad(std::string(display_name(m.variables[j])), 7, true) << pad(fixed(m.coefficients[i], 3), 10)
       << pad(fixed(m.standardized[i], 3), 10) << '\n';
  }
  os << "  (Constant) " << fixed(m.constant, 3) << '\n';

  os << "\nClassification functions (" << (m.fisher.rule == PriorRule::Equal ? "equal" : "proportional")
     << " priors)\n";
  os << "  " << pad("", 11, true) << pad("Bankrupt", 10) << pad("Non-bankr.", 12) << '\n';
  for (std::size_t j = 0; j < m.variables.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    os << "  " << pad(std::string(display_name(m.variables[j])), 11, true)
       << pad(fixed(m.fisher.weights[0][i], 3), 10) << pad(fixed(m.fisher.weights[1][i], 3), 12) << '\n';
  }
  os << "  " << pad("(Constant)", 11, true) << pad(fixed(m.fisher.constants[0], 3), 10)
     << pad(fixed(m.fisher.constants[1], 3), 12) << '\n';

  os << "\nClassification results\n";
  for (auto a : {GroupLabel::Bankrupt, GroupLabel::NonBankrupt}) {
    os << "  " << pad(group_name(a), 14, true) << pad(std::to_string(cm.counts[index(a)][0]), 5)
       << pad(std::to_string(cm.counts[index(a)][1]), 5) << "   "
       << pad(fixed(cm.row_percent(a, GroupLabel::Bankrupt), 1), 6)
       << pad(fixed(cm.row_percent(a, GroupLabel::NonBankrupt), 1), 7) << '\n';
  }
  os << "  " << fixed(cm.percent_correct(), 1) << "% of original grouped cases correctly classified\n";

  os << "\nEigenvalue " << fixed(m.eigenvalue, 3) << "  canonical correlation "
     << fixed(m.canonical_correlation, 3) << "  Wilks' lambda " << fixed(m.wilks_lambda, 3) << '\n';
  os << "Group centroids: Bankrupt " << fixed(m.centroid[0], 3) << "  Non bankrupt "
     << fixed(m.centroid[1], 3) << '\n';
  const auto z = derived_zones(m);
  os << "Cut-off point " << fixed(z.cutoff, 6);
  if (z.grey) os << "  grey zone [" << fixed(z.grey->lo, 3) << ", " << fixed(z.grey->hi, 3) << "]";
  else os << "  grey zone: none (centroid +/- sd bands overlap)";
  os << '\n';
  return os.str();
}

std::string render_fit_json(const ModelFile& file, const ConfusionMatrix& cm) {
  const auto& m = file.model;
  json coef = json::object();
  for (std::size_t j = 0; j < m.variables.size(); ++j) {
    coef[m.variables[j]] = m.coefficients[static_cast<Eigen::Index>(j)];
  }
  json j;
  j["coefficients"] = coef;
  j["constant"] = m.constant;
  j["eigenvalue"] = m.eigenvalue;
  j["canonical_correlation"] = m.canonical_correlation;
  j["wilks_lambda"] = m.wilks_lambda;
  j["centroids"] = json{{"bankrupt", m.centroid[0]}, {"nonbankrupt", m.centroid[1]}};
  j["zones"] = zones_json(derived_zones(m));
  j["classification"] = json{{"counts", cm.counts}, {"percent_correct", cm.percent_correct()}};
  return j.dump(2) + "\n";
}

std::string render_diagnostics_text(const DiagnosticBattery& d) {
  std::ostringstream os;
  const auto& c = d.collinearity;
  os << "Pooled within-groups correlation matrix\n" << pad("", 8, true);
  for (const auto& v : c.variables) os << pad(std::string(display_name(v)), 8);
  os << '\n';
  for (Eigen::Index i = 0; i < c.matrix.rows(); ++i) {
    os << pad(std::string(display_name(c.variables[static_cast<std::size_t>(i)])), 8, true);
    for (Eigen::Index k = 0; k < c.matrix.cols(); ++k) os << pad(fixed(c.matrix(i, k), 3), 8);
    os << '\n';
  }
  os << "Pairs with |r| > " << fixed(c.threshold, 2) << ":";
  if (c.flagged.empty()) os << " none";
  for (const auto& f : c.flagged) {
    os << "\n  " << display_name(f.first) << " - " << display_name(f.second) << "  " << fixed(f.r, 3);
  }
  os << "\n\n";

  const auto& w = d.wilks;
  os << "Wilks' lambda " << fixed(w.lambda, 3) << "  chi-square " << fixed(w.chi_square, 3) << "  df "
     << w.df << "  sig. " << fixed(w.p_value, 3) << '\n'
     << "  " << verdict(w) << " (alpha " << fixed(w.alpha, 2) << ")\n\n";

  if (d.box_m) {
    const auto& b = *d.box_m;
    os << "Box's M " << fixed(b.m, 3) << "  F approx. " << fixed(b.f_approx, 3) << "  df1 "
       << fixed(b.df1, 0) << "  df2 " << fixed(b.df2, 3) << "  sig. " << fixed(b.p_value, 3) << '\n'
       << "  " << verdict(b) << " (alpha " << fixed(b.alpha, 2) << ")\n\n";
  } else {
    os << "Box's M not computed: " << d.box_m_skipped << "\n\n";
  }

  const auto& k = d.canonical;
  os << "Eigenvalue " << fixed(k.eigenvalue, 3) << "  % of variance " << fixed(k.percent_variance, 0)
     << "  cumulative % " << fixed(k.cumulative_percent, 0) << "  canonical correlation "
     << fixed(k.canonical_correlation, 3) << "  R^2 " << fixed(100.0 * k.r_squared, 1) << "%\n";
  return os.str();
}

std::string render_diagnostics_json(const DiagnosticBattery& d) {
  json flagged = json::array();
  for (const auto& f : d.collinearity.flagged) {
    flagged.push_back(json{{"first", f.first}, {"second", f.second}, {"r", f.r}});
  }
  json j;
  j["collinearity"] = json{{"threshold", d.collinearity.threshold}, {"flagged", flagged}};
  j["wilks"] = json{{"lambda", d.wilks.lambda},   {"chi_square", d.wilks.chi_square},
                    {"df", d.wilks.df},           {"p_value", d.wilks.p_value},
                    {"significant", d.wilks.significant}, {"verdict", verdict(d.wilks)}};
  if (d.box_m) {
    const auto& b = *d.box_m;
    j["box_m"] = json{{"m", b.m},
                      {"f", b.f_approx},
                      {"df1", b.df1},
                      {"df2", std::isfinite(b.df2) ? json(b.df2) : json(nullptr)},
                      {"p_value", b.p_value},
                      {"branch", b.branch == BoxFBranch::PositiveC2   ? "c2>c1^2"
                                 : b.branch == BoxFBranch::NegativeC2 ? "c2<c1^2"
                                                                      : "limit"},
                      {"homogeneous", b.homogeneous},
                      {"verdict", verdict(b)}};
  } else {
    j["box_m"] = nullptr;
  }
  j["canonical"] = json{{"eigenvalue", d.canonical.eigenvalue},
                        {"percent_variance", d.canonical.percent_variance},
                        {"cumulative_percent", d.canonical.cumulative_percent},
                        {"canonical_correlation", d.canonical.canonical_correlation},
                        {"r_squared", d.canonical.r_squared}};
  return j.dump(2) + "\n";
}

std::string render_evaluation_text(const EvaluationReport& rep) {
  std::ostringstream os;
  os << "Scoring mode: " << to_string(rep.mode) << "   zones: " << to_string(rep.zones.source)
     << "   cut-off " << fixed(rep.zones.cutoff, 6);
  if (rep.zones.grey) os << "   grey [" << fixed(rep.zones.grey->lo, 3) << ", " << fixed(rep.zones.grey->hi, 3) << "]";
  os << "\n\n";
  for (const auto& n : rep.notices) os << "note: " << n << '\n';
  if (rep.years.empty()) {
    os << "No available records to evaluate.\n";
    return os.str();
  }
  os << "Three-zone classification\n";
  year_table(os, rep.years, true);
  os << "\nCut-off classification\n";
  year_table(os, rep.cutoff_only, false);

  // Appendix-style detail: one row per bank, one column per year.
  std::vector<std::string> banks;
  std::map<std::pair<std::string, int>, const BankScore*> cell;
  for (const auto& y : rep.years) {
    for (const auto& b : y.banks) {
      if (std::find(banks.begin(), banks.end(), b.bank) == banks.end()) banks.push_back(b.bank);
      cell[{b.bank, b.year}] = &b;
    }
  }
  std::size_t width = 4;
  for (const auto& b : banks) width = std::max(width, b.size());
  os << "\nDiscriminant scores\n" << pad("", width + 2, true);
  for (auto it = rep.years.rbegin(); it != rep.years.rend(); ++it) os << pad(std::to_string(it->year), 12);
  os << '\n';
  for (const auto& b : banks) {
    os << pad(b, width + 2, true);
    for (auto it = rep.years.rbegin(); it != rep.years.rend(); ++it) {
      const auto found = cell.find({b, it->year});
      os << pad(found == cell.end() ? "n.a" : format_score(found->second->score, found->second->zone), 12);
    }
    os << '\n';
  }
  return os.str();
}

std::string render_evaluation_json(const EvaluationReport& rep) {
  json years = json::array();
  for (const auto& y : rep.years) years.push_back(year_json(y));
  json cutoff = json::array();
  for (const auto& y : rep.cutoff_only) cutoff.push_back(year_json(y));
  json j;
  j["years"] = years;
  j["cutoff_only"] = cutoff;
  j["zones"] = zones_json(rep.zones);
  j["mode"] = to_string(rep.mode);
  j["notices"] = rep.notices;
  return j.dump(2) + "\n";
}

}  // namespace distress
