#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace distress {

/// Binary group membership. The numeric value is the discriminant target
/// (0 = bankrupt, 1 = healthy) and doubles as an index into per-group arrays.
enum class GroupLabel { Bankrupt = 0, NonBankrupt = 1 };

inline constexpr std::size_t kGroupCount = 2;

inline constexpr std::size_t index(GroupLabel g) { return static_cast<std::size_t>(g); }
std::string_view to_string(GroupLabel g);
std::optional<GroupLabel> parse_group_label(std::string_view text);

/// Canonical ratio names in the order they appear in the CSV schema.
inline constexpr std::array<std::string_view, 6> kRatioNames{"eaa",  "roae", "roaa",
                                                              "nii",  "laaa", "bdtla"};

/// Display names used in reports.
inline constexpr std::array<std::string_view, 6> kRatioLabels{"EAA",  "ROAE", "ROAA",
                                                               "NII",  "LAAA", "BDTLA"};

std::vector<std::string> ratio_names();
std::string_view display_name(std::string_view variable);

/// The six financial ratios of one bank-observation, as decimal fractions.
/// Values are unbounded: negative returns and loan ratios above one occur.
struct RatioVector {
  double eaa = 0.0;    // equity / average total assets
  double roae = 0.0;   // return / average equity
  double roaa = 0.0;   // return / average total assets
  double nii = 0.0;    // net interest income / average total assets
  double laaa = 0.0;   // loans and advances / average total assets
  double bdtla = 0.0;  // bad debts / total loans and advances

  std::array<double, 6> values() const { return {eaa, roae, roaa, nii, laaa, bdtla}; }
  Eigen::VectorXd to_vector() const;
  static RatioVector from_values(std::span<const double, 6> v);
  bool all_zero() const;
  bool all_finite() const;

  bool operator==(const RatioVector&) const = default;
};

struct BankYearRecord {
  std::string bank_id;
  int year = 0;
  RatioVector ratios;
  bool available = true;
  std::optional<GroupLabel> label;

  bool operator==(const BankYearRecord&) const = default;
};

/// Inclusive calendar-year window.
struct YearRange {
  int first = 2012;
  int last = 2015;

  bool contains(int year) const { return year >= first && year <= last; }
  bool valid() const { return first <= last; }
};

/// Parses "YYYY:YYYY". Throws a config error on malformed or inverted input.
YearRange parse_year_range(std::string_view text);

struct LabeledSample {
  std::string bank_id;
  Eigen::VectorXd values;
  GroupLabel label = GroupLabel::NonBankrupt;
};

struct TrainingSet {
  std::vector<std::string> variables;
  std::vector<LabeledSample> samples;
  std::size_t n0 = 0;  // bankrupt
  std::size_t n1 = 0;  // healthy

  std::size_t p() const { return variables.size(); }
  std::size_t size() const { return samples.size(); }
  std::size_t count(GroupLabel g) const { return g == GroupLabel::Bankrupt ? n0 : n1; }
};

/// Reads the panel CSV (`bank,year,eaa,roae,roaa,nii,laaa,bdtla[,label]`).
/// Cells may carry a trailing '%' and are then divided by 100. Rows whose six
/// ratios are all empty or all zero are kept with available = false.
std::vector<BankYearRecord> parse_panel(std::string_view text);

std::string serialize_panel(std::span<const BankYearRecord> records);

/// Component-wise mean over the available records of `bank_id` inside `years`.
RatioVector average_ratios(std::span<const BankYearRecord> records, std::string_view bank_id,
                           YearRange years);

/// One averaged sample per bank, in first-appearance order. Labels come from
/// `overrides` first, then from the label column of the rows in the window.
std::vector<LabeledSample> assemble_training_samples(
    std::span<const BankYearRecord> records, YearRange years,
    const std::map<std::string, GroupLabel>& overrides = {});

TrainingSet build_training_set(std::vector<std::string> variables,
                               std::vector<LabeledSample> samples);

/// Same as above with the six canonical ratio names.
TrainingSet build_training_set(std::vector<LabeledSample> samples);

struct CaseSummaryCell {
  std::string variable;
  GroupLabel group = GroupLabel::Bankrupt;
  std::size_t valid = 0;
  std::size_t missing = 0;
  std::size_t total() const { return valid + missing; }
  double valid_percent() const;
  double missing_percent() const;
};

/// Valid/missing counts per variable and group.
std::vector<CaseSummaryCell> case_processing_summary(const TrainingSet& ts);

}  // namespace distress
