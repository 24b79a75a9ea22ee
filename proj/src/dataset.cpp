#include "distress/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "distress/errors.hpp"

namespace distress {

std::string_view to_string(GroupLabel g) {
  return g == GroupLabel::Bankrupt ? "bankrupt" : "nonbankrupt";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// RFC 4180 style splitting of one physical line. Quoted fields may contain
// commas and doubled quotes; embedded newlines are not supported.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t row) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      cells.push_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw ParseError(row, "", "unterminated quoted field");
  cells.push_back(was_quoted ? cur : std::string(trim(cur)));
  return cells;
}

std::optional<double> parse_ratio_cell(std::string_view cell) {
  cell = trim(cell);
  bool percent = false;
  if (!cell.empty() && cell.back() == '%') {
    percent = true;
    cell = trim(cell.substr(0, cell.size() - 1));
  }
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return percent ? v / 100.0 : v;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::optional<GroupLabel> parse_group_label(std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "bankrupt" || t == "0") return GroupLabel::Bankrupt;
  if (t == "nonbankrupt" || t == "non-bankrupt" || t == "1") return GroupLabel::NonBankrupt;
  return std::nullopt;
}

std::vector<std::string> ratio_names() {
  return {kRatioNames.begin(), kRatioNames.end()};
}

std::string_view display_name(std::string_view variable) {
  for (std::size_t j = 0; j < kRatioNames.size(); ++j) {
    if (kRatioNames[j] == variable) return kRatioLabels[j];
  }
  return variable;
}

Eigen::VectorXd RatioVector::to_vector() const {
  const auto v = values();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), 6);
}

RatioVector RatioVector::from_values(std::span<const double, 6> v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

bool RatioVector::all_zero() const {
  const auto v = values();
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

bool RatioVector::all_finite() const {
  const auto v = values();
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

YearRange parse_year_range(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorKind::Config, "window must look like YYYY:YYYY, got \"" + std::string(text) + "\"");
  }
  auto to_int = [&](std::string_view s) {
    s = trim(s);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      fail(ErrorKind::Config, "bad year \"" + std::string(s) + "\" in window");
    }
    return v;
  };
  YearRange r{to_int(text.substr(0, colon)), to_int(text.substr(colon + 1))};
  if (!r.valid()) {
    fail(ErrorKind::Config, "inverted window " + std::to_string(r.first) + ":" +
                                std::to_string(r.last));
  }
  return r;
}

std::vector<BankYearRecord> parse_panel(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos <= text.size();) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    if (!trim(line).empty()) lines.push_back(line);
    pos = nl + 1;
  }
  if (lines.empty()) fail(ErrorKind::Schema, "empty document, header row required");

  const auto header = split_csv_line(lines.front(), 0);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col.emplace(lower(header[i]), i);

  auto require = [&](const std::string& name) {
    const auto it = col.find(name);
    if (it == col.end()) fail(ErrorKind::Schema, "missing required column \"" + name + "\"");
    return it->second;
  };
  const std::size_t bank_col = require("bank");
  const std::size_t year_col = require("year");
  std::array<std::size_t, 6> ratio_cols{};
  for (std::size_t j = 0; j < kRatioNames.size(); ++j) {
    ratio_cols[j] = require(std::string(kRatioNames[j]));
  }
  const auto label_it = col.find("label");

  std::vector<BankYearRecord> out;
  std::set<std::pair<std::string, int>> seen;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_csv_line(lines[r], r);
    if (cells.size() < header.size()) {
      throw ParseError(r, header[cells.size()], "row has " + std::to_string(cells.size()) +
                                                    " cells, header has " +
                                                    std::to_string(header.size()));
    }
    BankYearRecord rec;
    rec.bank_id = cells[bank_col];
    if (rec.bank_id.empty()) throw ParseError(r, "bank", "empty bank identifier");

    const std::string_view ytxt = trim(cells[year_col]);
    const auto [yptr, yec] = std::from_chars(ytxt.data(), ytxt.data() + ytxt.size(), rec.year);
    if (yec != std::errc{} || yptr != ytxt.data() + ytxt.size() || ytxt.empty()) {
      throw ParseError(r, "year", "not an integer: \"" + std::string(ytxt) + "\"");
    }

    std::array<double, 6> v{};
    std::size_t empty_cells = 0;
    for (std::size_t j = 0; j < 6; ++j) {
      const auto& cell = cells[ratio_cols[j]];
      if (trim(cell).empty()) {
        ++empty_cells;
        continue;
      }
      const auto parsed = parse_ratio_cell(cell);
      if (!parsed) {
        throw ParseError(r, std::string(kRatioNames[j]), "malformed number \"" + cell + "\"");
      }
      v[j] = *parsed;
    }
    if (empty_cells != 0 && empty_cells != 6) {
      for (std::size_t j = 0; j < 6; ++j) {
        if (trim(cells[ratio_cols[j]]).empty()) {
          throw ParseError(r, std::string(kRatioNames[j]), "empty cell in a partially filled row");
        }
      }
    }
    rec.ratios = RatioVector::from_values(v);
    rec.available = !rec.ratios.all_zero();

    if (label_it != col.end()) {
      const auto& cell = cells[label_it->second];
      if (!trim(cell).empty()) {
        rec.label = parse_group_label(cell);
        if (!rec.label) throw ParseError(r, "label", "expected bankrupt or nonbankrupt, got \"" + cell + "\"");
      }
    }

    if (!seen.emplace(rec.bank_id, rec.year).second) {
      fail(ErrorKind::DuplicateKey, "bank \"" + rec.bank_id + "\" year " +
                                        std::to_string(rec.year) + " appears twice (row " +
                                        std::to_string(r) + ")");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string serialize_panel(std::span<const BankYearRecord> records) {
  const bool with_label =
      std::any_of(records.begin(), records.end(), [](const auto& r) { return r.label.has_value(); });
  std::string out = "bank,year,eaa,roae,roaa,nii,laaa,bdtla";
  if (with_label) out += ",label";
  out += '\n';
  for (const auto& r : records) {
    out += quote_if_needed(r.bank_id);
    out += ',' + std::to_string(r.year);
    for (double x : r.ratios.values()) out += ',' + format_double(x);
    if (with_label) {
      out += ',';
      if (r.label) out += to_string(*r.label);
    }
    out += '\n';
  }
  return out;
}

RatioVector average_ratios(std::span<const BankYearRecord> records, std::string_view bank_id,
                           YearRange years) {
  std::array<double, 6> sum{};
  std::size_t n = 0;
  for (const auto& r : records) {
    if (!r.available || r.bank_id != bank_id || !years.contains(r.year)) continue;
    const auto v = r.ratios.values();
    for (std::size_t j = 0; j < 6; ++j) sum[j] += v[j];
    ++n;
  }
  if (n == 0) {
    fail(ErrorKind::EmptyWindow, "no available records for \"" + std::string(bank_id) + "\" in " +
                                     std::to_string(years.first) + ":" +
                                     std::to_string(years.last));
  }
  for (auto& s : sum) s /= static_cast<double>(n);
  return RatioVector::from_values(sum);
}

std::vector<LabeledSample> assemble_training_samples(
    std::span<const BankYearRecord> records, YearRange years,
    const std::map<std::string, GroupLabel>& overrides) {
  std::vector<std::string> banks;
  for (const auto& r : records) {
    if (std::find(banks.begin(), banks.end(), r.bank_id) == banks.end()) banks.push_back(r.bank_id);
  }

  std::vector<LabeledSample> samples;
  for (const auto& bank : banks) {
    std::optional<GroupLabel> label;
    if (const auto it = overrides.find(bank); it != overrides.end()) {
      label = it->second;
    } else {
      for (const auto& r : records) {
        if (r.bank_id != bank || !years.contains(r.year) || !r.label) continue;
        if (label && *label != *r.label) {
          fail(ErrorKind::Validation, "bank \"" + bank + "\" has conflicting labels in the window");
        }
        label = r.label;
      }
    }
    if (!label) fail(ErrorKind::MissingLabel, "no label for bank \"" + bank + "\"");
    samples.push_back({bank, average_ratios(records, bank, years).to_vector(), *label});
  }
  return samples;
}

TrainingSet build_training_set(std::vector<std::string> variables,
                               std::vector<LabeledSample> samples) {
  TrainingSet ts;
  ts.variables = std::move(variables);
  for (const auto& s : samples) {
    if (s.values.size() != static_cast<Eigen::Index>(ts.variables.size())) {
      fail(ErrorKind::Validation, "sample \"" + s.bank_id + "\" has " +
                                      std::to_string(s.values.size()) + " values, expected " +
                                      std::to_string(ts.variables.size()));
    }
    if (!s.values.allFinite()) {
      fail(ErrorKind::MissingData, "sample \"" + s.bank_id + "\" has unavailable values");
    }
    (s.label == GroupLabel::Bankrupt ? ts.n0 : ts.n1)++;
  }
  ts.samples = std::move(samples);

  if (ts.n0 < 2 || ts.n1 < 2) {
    fail(ErrorKind::InsufficientGroup, "need at least 2 cases per group, got bankrupt=" +
                                           std::to_string(ts.n0) +
                                           " nonbankrupt=" + std::to_string(ts.n1));
  }
  if (ts.p() > ts.n0 + ts.n1 - 1) {
    fail(ErrorKind::VariableCount, std::to_string(ts.p()) + " variables exceed sample size minus one (" +
                                       std::to_string(ts.n0 + ts.n1 - 1) + ")");
  }
  return ts;
}

TrainingSet build_training_set(std::vector<LabeledSample> samples) {
  return build_training_set(ratio_names(), std::move(samples));
}

double CaseSummaryCell::valid_percent() const {
  return total() == 0 ? 0.0 : 100.0 * static_cast<double>(valid) / static_cast<double>(total());
}

double CaseSummaryCell::missing_percent() const {
  return total() == 0 ? 0.0 : 100.0 * static_cast<double>(missing) / static_cast<double>(total());
}

std::vector<CaseSummaryCell> case_processing_summary(const TrainingSet& ts) {
  std::vector<CaseSummaryCell> out;
  for (std::size_t j = 0; j < ts.p(); ++j) {
    for (auto g : {GroupLabel::Bankrupt, GroupLabel::NonBankrupt}) {
      CaseSummaryCell cell{ts.variables[j], g, 0, 0};
      for (const auto& s : ts.samples) {
        if (s.label != g) continue;
        if (std::isfinite(s.values[static_cast<Eigen::Index>(j)])) ++cell.valid;
        else ++cell.missing;
      }
      out.push_back(cell);
    }
  }
  return out;
}

}  // namespace distress
