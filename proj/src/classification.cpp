#include "distress/classification.hpp"

#include <cmath>
#include <set>

#include "distress/errors.hpp"

namespace distress {

std::string_view to_string(ZoneLabel z) {
  switch (z) {
    case ZoneLabel::Bankrupt: return "bankrupt";
    case ZoneLabel::Grey: return "grey";
    case ZoneLabel::NonBankrupt: return "nonbankrupt";
  }
  return "?";
}

std::string_view to_string(ZoneSource s) {
  return s == ZoneSource::DerivedFromModel ? "derived-from-model" : "explicit-override";
}

std::string_view to_string(ScoringMode m) { return m == ScoringMode::Raw ? "raw" : "normalized"; }

std::optional<ScoringMode> parse_scoring_mode(std::string_view text) {
  if (text == "raw") return ScoringMode::Raw;
  if (text == "normalized") return ScoringMode::Normalized;
  return std::nullopt;
}

std::string_view zone_glyph(ZoneLabel z) {
  switch (z) {
    case ZoneLabel::Bankrupt: return "▼";
    case ZoneLabel::Grey: return "■";
    case ZoneLabel::NonBankrupt: return "▲";
  }
  return "?";
}

double cutoff_point(double y0, std::size_t n0, double y1, std::size_t n1) {
  const auto a = static_cast<double>(n0);
  const auto b = static_cast<double>(n1);
  return (y0 * a + y1 * b) / (a + b);
}

double cutoff_point(const DiscriminantModel& model) {
  return cutoff_point(model.centroid[0], model.n[0], model.centroid[1], model.n[1]);
}

std::optional<GreyInterval> grey_zone(double y0, double s0, double y1, double s1) {
  const double lo = y0 + s0;
  const double hi = y1 - s1;
  if (lo >= hi) return std::nullopt;
  return GreyInterval{lo, hi};
}

std::optional<GreyInterval> grey_zone(const DiscriminantModel& model) {
  return grey_zone(model.centroid[0], model.score_sd[0], model.centroid[1], model.score_sd[1]);
}

ClassificationZones derived_zones(const DiscriminantModel& model) {
  return {cutoff_point(model), grey_zone(model), ZoneSource::DerivedFromModel};
}

ClassificationZones published_zones() {
  return {-0.000007, GreyInterval{-0.040, -0.003}, ZoneSource::ExplicitOverride};
}

void validate(const ClassificationZones& zones) {
  if (!std::isfinite(zones.cutoff)) fail(ErrorKind::Validation, "cut-off must be finite");
  if (zones.grey && !(zones.grey->lo <= zones.grey->hi)) {
    fail(ErrorKind::Validation, "grey interval lower bound exceeds upper bound");
  }
}

ZoneLabel classify_zone(double score, const ClassificationZones& zones) {
  if (!std::isfinite(score)) fail(ErrorKind::Validation, "score is not finite");
  if (zones.grey) {
    if (score < zones.grey->lo) return ZoneLabel::Bankrupt;
    if (score <= zones.grey->hi) return ZoneLabel::Grey;
    return ZoneLabel::NonBankrupt;
  }
  return score < zones.cutoff ? ZoneLabel::Bankrupt : ZoneLabel::NonBankrupt;
}

double score_observation(const DiscriminantModel& model, const NormalizationStats& stats,
                         const RatioVector& v, ScoringMode mode) {
  if (!v.all_finite()) fail(ErrorKind::MissingData, "observation has non-finite ratios");
  const NamedVector raw(ratio_names(), v.to_vector());
  if (mode == ScoringMode::Raw) return score(model, raw);
  return score(model, apply(stats, raw));
}

double score_observation(const DiscriminantModel& model, const NormalizationStats& stats,
                         const BankYearRecord& record, ScoringMode mode) {
  if (!record.available) {
    fail(ErrorKind::MissingData, "\"" + record.bank_id + "\" " + std::to_string(record.year) +
                                     " has no data");
  }
  return score_observation(model, stats, record.ratios, mode);
}

std::size_t ConfusionMatrix::total() const {
  return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

std::size_t ConfusionMatrix::correct() const { return counts[0][0] + counts[1][1]; }

std::size_t ConfusionMatrix::row_total(GroupLabel actual) const {
  const auto& row = counts[index(actual)];
  return row[0] + row[1];
}

double ConfusionMatrix::row_percent(GroupLabel actual, GroupLabel predicted) const {
  const auto n = row_total(actual);
  return n == 0 ? 0.0
                : 100.0 * static_cast<double>(counts[index(actual)][index(predicted)]) /
                      static_cast<double>(n);
}

double ConfusionMatrix::percent_correct() const {
  return total() == 0 ? 0.0 : 100.0 * static_cast<double>(correct()) / static_cast<double>(total());
}

ConfusionMatrix confusion_matrix(const DiscriminantModel& model, const TrainingSet& tsz) {
  ConfusionMatrix cm;
  for (const auto& s : tsz.samples) {
    const auto predicted = fisher_classify(model, NamedVector(tsz.variables, s.values)).label;
    cm.counts[index(s.label)][index(predicted)]++;
  }
  return cm;
}

std::optional<GroupLabel> ActualLabels::lookup(const std::string& bank, int year) const {
  if (const auto it = by_bank_year.find({bank, year}); it != by_bank_year.end()) return it->second;
  if (const auto it = by_bank.find(bank); it != by_bank.end()) return it->second;
  return std::nullopt;
}

ActualLabels ActualLabels::from_records(std::span<const BankYearRecord> records) {
  ActualLabels out;
  for (const auto& r : records) {
    if (r.label) out.by_bank_year[{r.bank_id, r.year}] = *r.label;
  }
  return out;
}

namespace {

YearEvaluation tally(int year, std::vector<BankScore> banks) {
  YearEvaluation y;
  y.year = year;
  for (const auto& b : banks) {
    y.zone_counts[static_cast<std::size_t>(b.zone)]++;
    (b.actual == GroupLabel::Bankrupt ? y.actual_bankrupt : y.actual_nonbankrupt)++;
    if (b.zone == ZoneLabel::Grey) continue;
    const bool predicted_bankrupt = b.zone == ZoneLabel::Bankrupt;
    const bool actual_bankrupt = b.actual == GroupLabel::Bankrupt;
    if (predicted_bankrupt == actual_bankrupt) y.hits++;
    else if (actual_bankrupt) y.type1_count++;
    else y.type2_count++;
  }
  y.total = banks.size();
  auto rate = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  y.type1_rate = rate(y.type1_count, y.actual_bankrupt);
  y.type2_rate = rate(y.type2_count, y.actual_nonbankrupt);
  y.grey_rate = rate(y.count(ZoneLabel::Grey), y.total);
  y.accuracy = rate(y.hits, y.total);
  y.banks = std::move(banks);
  return y;
}

}  // namespace

EvaluationReport evaluate_panel(const DiscriminantModel& model, const NormalizationStats& stats,
                                std::span<const BankYearRecord> records,
                                const ActualLabels& actual, const ClassificationZones& zones,
                                ScoringMode mode) {
  validate(zones);
  EvaluationReport rep;
  rep.mode = mode;
  rep.zones = zones;

  const ClassificationZones cutoff_zones{zones.cutoff, std::nullopt, zones.source};

  std::set<int> years;
  for (const auto& r : records) years.insert(r.year);

  for (int year : years) {
    std::vector<BankScore> three;
    std::vector<BankScore> two;
    for (const auto& r : records) {
      if (r.year != year || !r.available) continue;
      const auto label = actual.lookup(r.bank_id, r.year);
      if (!label) {
        fail(ErrorKind::MissingLabel, "no actual label for bank \"" + r.bank_id + "\" in " +
                                          std::to_string(r.year));
      }
      const double s = score_observation(model, stats, r, mode);
      three.push_back({r.bank_id, year, s, classify_zone(s, zones), *label});
      two.push_back({r.bank_id, year, s, classify_zone(s, cutoff_zones), *label});
    }
    if (three.empty()) {
      rep.notices.push_back("year " + std::to_string(year) + " has no available records; omitted");
      continue;
    }
    rep.years.push_back(tally(year, std::move(three)));
    rep.cutoff_only.push_back(tally(year, std::move(two)));
  }
  return rep;
}

}  // namespace distress
