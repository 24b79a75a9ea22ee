#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "distress/dataset.hpp"
#include "distress/lda.hpp"
#include "distress/normalization.hpp"

namespace distress {

enum class ZoneLabel { Bankrupt = 0, Grey = 1, NonBankrupt = 2 };
enum class ZoneSource { DerivedFromModel, ExplicitOverride };
enum class ScoringMode { Normalized, Raw };

std::string_view to_string(ZoneLabel z);
std::string_view to_string(ZoneSource s);
std::string_view to_string(ScoringMode m);
std::optional<ScoringMode> parse_scoring_mode(std::string_view text);

/// Appendix-style marker: ▼ bankrupt, ■ grey, ▲ healthy.
std::string_view zone_glyph(ZoneLabel z);

struct GreyInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ClassificationZones {
  double cutoff = 0.0;
  std::optional<GreyInterval> grey;
  ZoneSource source = ZoneSource::DerivedFromModel;
};

/// Size-weighted centroid mean (y0 n0 + y1 n1) / (n0 + n1).
double cutoff_point(double y0, std::size_t n0, double y1, std::size_t n1);
double cutoff_point(const DiscriminantModel& model);

/// [y0 + s0, y1 - s1], or nothing when the interval is empty or inverted.
std::optional<GreyInterval> grey_zone(double y0, double s0, double y1, double s1);
std::optional<GreyInterval> grey_zone(const DiscriminantModel& model);

ClassificationZones derived_zones(const DiscriminantModel& model);

/// The published cut-off and grey interval. They live on the raw-ratio
/// score scale.
ClassificationZones published_zones();

/// Validates lo <= hi when a grey interval is present.
void validate(const ClassificationZones& zones);

ZoneLabel classify_zone(double score, const ClassificationZones& zones);

/// Normalized mode standardizes first, raw mode applies the coefficients to
/// the ratio fractions as they are.
double score_observation(const DiscriminantModel& model, const NormalizationStats& stats,
                         const RatioVector& v, ScoringMode mode);
double score_observation(const DiscriminantModel& model, const NormalizationStats& stats,
                         const BankYearRecord& record, ScoringMode mode);

struct ConfusionMatrix {
  /// counts[actual][predicted], indexed by GroupLabel.
  std::array<std::array<std::size_t, kGroupCount>, kGroupCount> counts{};

  std::size_t total() const;
  std::size_t correct() const;
  std::size_t row_total(GroupLabel actual) const;
  double row_percent(GroupLabel actual, GroupLabel predicted) const;
  double percent_correct() const;
};

/// In-sample classification of a normalized training set by the Fisher functions.
ConfusionMatrix confusion_matrix(const DiscriminantModel& model, const TrainingSet& tsz);

/// Actual group membership for evaluation. A (bank, year) entry wins over
/// the bank-wide entry.
struct ActualLabels {
  std::map<std::string, GroupLabel> by_bank;
  std::map<std::pair<std::string, int>, GroupLabel> by_bank_year;

  std::optional<GroupLabel> lookup(const std::string& bank, int year) const;
  /// Collects the per-row labels of a panel.
  static ActualLabels from_records(std::span<const BankYearRecord> records);
};

struct BankScore {
  std::string bank;
  int year = 0;
  double score = 0.0;
  ZoneLabel zone = ZoneLabel::NonBankrupt;
  GroupLabel actual = GroupLabel::NonBankrupt;
};

struct YearEvaluation {
  int year = 0;
  std::array<std::size_t, 3> zone_counts{};  // indexed by ZoneLabel
  std::size_t hits = 0;
  std::size_t total = 0;
  std::size_t actual_bankrupt = 0;
  std::size_t actual_nonbankrupt = 0;
  std::size_t type1_count = 0;  // bankrupt classified healthy
  std::size_t type2_count = 0;  // healthy classified bankrupt
  double type1_rate = 0.0;
  double type2_rate = 0.0;
  double grey_rate = 0.0;
  double accuracy = 0.0;
  std::vector<BankScore> banks;

  std::size_t count(ZoneLabel z) const { return zone_counts[static_cast<std::size_t>(z)]; }
};

struct EvaluationReport {
  ScoringMode mode = ScoringMode::Raw;
  ClassificationZones zones;
  /// Three-zone classification, one row per year with data, ascending.
  std::vector<YearEvaluation> years;
  /// The same panel classified by the cut-off alone.
  std::vector<YearEvaluation> cutoff_only;
  std::vector<std::string> notices;
};

/// Scores every available record and tallies zones, hits, and error rates per
/// year. Grey cases count neither as hits nor as errors.
EvaluationReport evaluate_panel(const DiscriminantModel& model, const NormalizationStats& stats,
                                std::span<const BankYearRecord> records,
                                const ActualLabels& actual, const ClassificationZones& zones,
                                ScoringMode mode);

}  // namespace distress
