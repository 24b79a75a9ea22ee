#include "distress/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "distress/errors.hpp"

namespace distress {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormat = "distress-lda-model";
constexpr int kVersion = 1;

json named(const std::vector<std::string>& names, const Eigen::VectorXd& v) {
  json out = json::object();
  for (std::size_t j = 0; j < names.size(); ++j) out[names[j]] = v[static_cast<Eigen::Index>(j)];
  return out;
}

json per_group(double bankrupt, double healthy) {
  return json{{"bankrupt", bankrupt}, {"nonbankrupt", healthy}};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Load, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) fail(ErrorKind::Load, std::string("key \"") + key + "\" is not a number");
  return v.get<double>();
}

Eigen::VectorXd read_named(const json& j, const char* key, const std::vector<std::string>& names) {
  const auto& obj = field(j, key);
  if (!obj.is_object() || obj.size() != names.size()) {
    fail(ErrorKind::Load, std::string("\"") + key + "\" must map every variable to a number");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(obj, names[i].c_str());
  return v;
}

std::array<double, kGroupCount> read_groups(const json& j, const char* key) {
  const auto& obj = field(j, key);
  return {number(obj, "bankrupt"), number(obj, "nonbankrupt")};
}

}  // namespace

std::string model_to_json(const ModelFile& file) {
  const auto& m = file.model;
  const auto& names = m.variables;
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  if (!file.note.empty()) j["note"] = file.note;
  j["variables"] = names;
  j["coefficients"] = named(names, m.coefficients);
  j["constant"] = m.constant;
  j["standardized_coefficients"] = named(names, m.standardized);
  j["centroids"] = per_group(m.centroid[0], m.centroid[1]);
  j["group_sizes"] = json{{"bankrupt", m.n[0]}, {"nonbankrupt", m.n[1]}};
  j["group_score_sd"] = per_group(m.score_sd[0], m.score_sd[1]);
  j["within_score_variance"] = m.within_score_variance;
  j["eigenvalue"] = m.eigenvalue;
  j["canonical_correlation"] = m.canonical_correlation;
  j["wilks_lambda"] = m.wilks_lambda;
  j["fisher"] = json{
      {"prior_rule", m.fisher.rule == PriorRule::Equal ? "equal" : "proportional"},
      {"priors", per_group(m.fisher.priors[0], m.fisher.priors[1])},
      {"weights", json{{"bankrupt", named(names, m.fisher.weights[0])},
                       {"nonbankrupt", named(names, m.fisher.weights[1])}}},
      {"constants", per_group(m.fisher.constants[0], m.fisher.constants[1])}};
  j["normalization"] = json{{"mean", named(file.stats.variables, file.stats.mean)},
                            {"sd", named(file.stats.variables, file.stats.sd)}};
  j["training_scores"] = json{{"bankrupt", m.training_scores[0]},
                              {"nonbankrupt", m.training_scores[1]}};
  json corr = json::array();
  for (Eigen::Index i = 0; i < m.within_corr.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.within_corr.cols(); ++k) row.push_back(m.within_corr(i, k));
    corr.push_back(row);
  }
  j["within_correlation"] = corr;
  return j.dump(2) + "\n";
}

ModelFile model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Load, std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != kFormat) {
      fail(ErrorKind::Load, "not a distress-lda model document");
    }
    ModelFile f;
    auto& m = f.model;
    f.note = j.value("note", "");
    const auto& vars = field(j, "variables");
    if (!vars.is_array() || vars.empty()) fail(ErrorKind::Load, "\"variables\" must be a non-empty array");
    m.variables = vars.get<std::vector<std::string>>();
    const auto& names = m.variables;

    m.coefficients = read_named(j, "coefficients", names);
    m.constant = number(j, "constant");
    m.standardized = read_named(j, "standardized_coefficients", names);
    m.centroid = read_groups(j, "centroids");
    const auto sizes = read_groups(j, "group_sizes");
    m.n = {static_cast<std::size_t>(sizes[0]), static_cast<std::size_t>(sizes[1])};
    m.score_sd = read_groups(j, "group_score_sd");
    m.within_score_variance = number(j, "within_score_variance");
    m.eigenvalue = number(j, "eigenvalue");
    m.canonical_correlation = number(j, "canonical_correlation");
    m.wilks_lambda = number(j, "wilks_lambda");
    if (m.eigenvalue < 0 || std::abs(m.wilks_lambda * (1.0 + m.eigenvalue) - 1.0) > 1e-6 ||
        std::abs(m.canonical_correlation * m.canonical_correlation + m.wilks_lambda - 1.0) > 1e-6) {
      fail(ErrorKind::Load, "eigenvalue, canonical correlation and Wilks' lambda disagree");
    }

    const auto& fj = field(j, "fisher");
    const auto rule = fj.value("prior_rule", "equal");
    m.fisher.rule = rule == "proportional" ? PriorRule::Proportional : PriorRule::Equal;
    m.fisher.priors = read_groups(fj, "priors");
    const auto& w = field(fj, "weights");
    m.fisher.weights = {read_named(w, "bankrupt", names), read_named(w, "nonbankrupt", names)};
    m.fisher.constants = read_groups(fj, "constants");

    const auto& nj = field(j, "normalization");
    f.stats.variables = names;
    f.stats.mean = read_named(nj, "mean", names);
    f.stats.sd = read_named(nj, "sd", names);
    if ((f.stats.sd.array() <= 0.0).any()) fail(ErrorKind::Load, "normalization sd must be positive");

    if (j.contains("training_scores")) {
      const auto& ts = j.at("training_scores");
      m.training_scores = {field(ts, "bankrupt").get<std::vector<double>>(),
                           field(ts, "nonbankrupt").get<std::vector<double>>()};
    }
    const auto p = static_cast<Eigen::Index>(names.size());
    m.within_corr = Eigen::MatrixXd::Identity(p, p);
    if (j.contains("within_correlation")) {
      const auto& rows = j.at("within_correlation");
      if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != p) {
        fail(ErrorKind::Load, "\"within_correlation\" must be a p x p array");
      }
      for (Eigen::Index i = 0; i < p; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != p) {
          fail(ErrorKind::Load, "\"within_correlation\" must be a p x p array");
        }
        for (Eigen::Index k = 0; k < p; ++k) m.within_corr(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
      }
    }
    return f;
  } catch (const json::exception& e) {
    fail(ErrorKind::Load, std::string("malformed model file: ") + e.what());
  }
}

std::string zones_to_json(const ClassificationZones& zones) {
  json j;
  j["cutoff"] = zones.cutoff;
  if (zones.grey) j["grey"] = json{{"lo", zones.grey->lo}, {"hi", zones.grey->hi}};
  else j["grey"] = nullptr;
  j["source"] = to_string(zones.source);
  return j.dump(2) + "\n";
}

ClassificationZones zones_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ClassificationZones z;
    z.cutoff = number(j, "cutoff");
    if (j.contains("grey") && !j.at("grey").is_null()) {
      const auto& g = j.at("grey");
      z.grey = GreyInterval{number(g, "lo"), number(g, "hi")};
    }
    const auto source = j.value("source", "explicit-override");
    if (source == "explicit-override") z.source = ZoneSource::ExplicitOverride;
    else if (source == "derived-from-model") z.source = ZoneSource::DerivedFromModel;
    else fail(ErrorKind::Load, "unknown zone source \"" + source + "\"");
    validate(z);
    return z;
  } catch (const json::exception& e) {
    fail(ErrorKind::Load, std::string("malformed zones file: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Load) throw;
    fail(ErrorKind::Load, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Config, "cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Config, "cannot write \"" + path + "\"");
  out << content;
}

}  // namespace distress
