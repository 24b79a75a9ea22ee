#include "distress/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "distress/classification.hpp"
#include "distress/model_io.hpp"
#include "distress/normalization.hpp"
#include "distress/report.hpp"

namespace distress {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::Config, "config key \"" + key + "\" expects a number, got \"" + text + "\"");
  }
}

OutputFormat parse_format(const std::string& text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "json") return OutputFormat::Json;
  fail(ErrorKind::Config, "format must be text or json, got \"" + text + "\"");
}

void set_key(RunConfig& cfg, std::string key, const std::string& value) {
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "train") cfg.train = value;
  else if (key == "panel") cfg.panels.push_back(value);
  else if (key == "model") cfg.model = value;
  else if (key == "zones") cfg.zones = value;
  else if (key == "mode") cfg.mode = value;
  else if (key == "format") cfg.format = parse_format(value);
  else if (key == "alpha") cfg.alpha = parse_number(key, value);
  else if (key == "collinearity-threshold") cfg.collinearity_threshold = parse_number(key, value);
  else if (key == "window") cfg.window = value;
  else if (key == "priors") cfg.priors = value;
  else if (key == "label") cfg.labels.insert_or_assign(parse_label_assignment(value).first,
                                                       parse_label_assignment(value).second);
  else fail(ErrorKind::Config, "unknown config key \"" + key + "\"");
}

std::string json_scalar(const std::string& key, const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  fail(ErrorKind::Config, "config key \"" + key + "\" must be a string or number");
}

void validate(const RunConfig& cfg) {
  parse_year_range(cfg.window);
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    fail(ErrorKind::Config, "alpha must lie in (0, 1)");
  }
  if (!(cfg.collinearity_threshold > 0.0 && cfg.collinearity_threshold < 1.0)) {
    fail(ErrorKind::Config, "collinearity threshold must lie in (0, 1)");
  }
  if (!parse_scoring_mode(cfg.mode)) {
    fail(ErrorKind::Config, "mode must be raw or normalized, got \"" + cfg.mode + "\"");
  }
  if (cfg.priors != "equal" && cfg.priors != "proportional") {
    fail(ErrorKind::Config, "priors must be equal or proportional, got \"" + cfg.priors + "\"");
  }
  if (cfg.zones.empty()) fail(ErrorKind::Config, "zones must be derived, paper, or a file path");
}

// Reattaches the file name to errors raised while reading it.
template <typename F>
auto with_file(const std::string& path, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(e.kind(), path + ": " + e.detail());
  }
}

struct FitOutcome {
  ModelFile file;
  TrainingSet raw;
  TrainingSet tsz;
};

FitOutcome fit_from_training(const RunConfig& cfg, const YearRange& window) {
  const auto& path = *cfg.train;
  const auto text = read_file(path);
  return with_file(path, [&] {
    const auto records = parse_panel(text);
    const bool labelled = std::any_of(records.begin(), records.end(),
                                      [](const auto& r) { return r.label.has_value(); });
    if (!labelled && cfg.labels.empty()) {
      fail(ErrorKind::Schema, "training file has no label column and no --label assignments");
    }
    FitOutcome o;
    o.raw = build_training_set(assemble_training_samples(records, window, cfg.labels));
    o.file.stats = fit_normalizer(o.raw);
    o.tsz = normalize(o.file.stats, o.raw);
    o.file.model = fit(o.tsz, cfg.priors == "proportional" ? PriorRule::Proportional : PriorRule::Equal);
    o.file.note = "fitted on " + path + " over " + cfg.window;
    return o;
  });
}

ModelFile obtain_model(const RunConfig& cfg, const YearRange& window) {
  if (cfg.model) {
    const auto text = read_file(*cfg.model);
    return with_file(*cfg.model, [&] { return model_from_json(text); });
  }
  if (cfg.train) return fit_from_training(cfg, window).file;
  fail(ErrorKind::Config, "a --model file or a --train file is required");
}

ClassificationZones obtain_zones(const RunConfig& cfg, const DiscriminantModel& model) {
  if (cfg.zones == "derived") return derived_zones(model);
  if (cfg.zones == "paper") return published_zones();
  const auto text = read_file(cfg.zones);
  return with_file(cfg.zones, [&] { return zones_from_json(text); });
}

std::vector<BankYearRecord> load_panels(const RunConfig& cfg) {
  if (cfg.panels.empty()) fail(ErrorKind::Config, "at least one --panel file is required");
  std::vector<BankYearRecord> all;
  for (const auto& path : cfg.panels) {
    const auto text = read_file(path);
    auto part = with_file(path, [&] { return parse_panel(text); });
    for (auto& r : part) {
      const bool clash = std::any_of(all.begin(), all.end(), [&](const auto& x) {
        return x.bank_id == r.bank_id && x.year == r.year;
      });
      if (clash) {
        fail(ErrorKind::DuplicateKey, path + ": bank \"" + r.bank_id + "\" year " +
                                          std::to_string(r.year) + " already seen in an earlier panel");
      }
      all.push_back(std::move(r));
    }
  }
  return all;
}

void cmd_fit(const RunConfig& cfg, const YearRange& window, bool write_model, std::ostream& out) {
  if (!cfg.train) fail(ErrorKind::Config, "fit needs --train");
  const auto o = fit_from_training(cfg, window);
  const auto cm = confusion_matrix(o.file.model, o.tsz);
  if (write_model) write_file(*cfg.model, model_to_json(o.file));
  out << (cfg.format == OutputFormat::Json ? render_fit_json(o.file, cm)
                                           : render_fit_text(o.file, o.raw, o.tsz, cm));
}

void cmd_diagnose(const RunConfig& cfg, const YearRange& window, std::ostream& out) {
  const auto file = obtain_model(cfg, window);
  const auto d = run_diagnostics(file.model, cfg.alpha, cfg.collinearity_threshold);
  out << (cfg.format == OutputFormat::Json ? render_diagnostics_json(d) : render_diagnostics_text(d));
}

void cmd_classify(const RunConfig& cfg, const YearRange& window, std::ostream& out) {
  const auto file = obtain_model(cfg, window);
  const auto zones = obtain_zones(cfg, file.model);
  validate(zones);
  const auto mode = *parse_scoring_mode(cfg.mode);
  const auto records = load_panels(cfg);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (const auto& r : records) {
    if (!r.available) {
      text << r.bank_id << '\t' << r.year << "\tn.a\n";
      continue;
    }
    const double s = score_observation(file.model, file.stats, r, mode);
    const auto z = classify_zone(s, zones);
    rows.push_back({{"bank", r.bank_id}, {"year", r.year}, {"score", s}, {"zone", to_string(z)}});
    text << r.bank_id << '\t' << r.year << '\t' << format_score(s, z) << '\t' << to_string(z) << '\n';
  }
  if (cfg.format == OutputFormat::Json) {
    nlohmann::ordered_json doc;
    doc["mode"] = to_string(mode);
    doc["zones_source"] = to_string(zones.source);
    doc["scores"] = rows;
    out << doc.dump(2) << '\n';
  } else {
    out << text.str();
  }
}

void cmd_evaluate(const RunConfig& cfg, const YearRange& window, std::ostream& out) {
  const auto file = obtain_model(cfg, window);
  const auto zones = obtain_zones(cfg, file.model);
  validate(zones);
  const auto mode = *parse_scoring_mode(cfg.mode);
  const auto records = load_panels(cfg);
  auto actual = ActualLabels::from_records(records);
  for (const auto& [bank, label] : cfg.labels) {
    actual.by_bank[bank] = label;
    std::erase_if(actual.by_bank_year, [&](const auto& kv) { return kv.first.first == bank; });
  }
  const auto rep = evaluate_panel(file.model, file.stats, records, actual, zones, mode);
  out << (cfg.format == OutputFormat::Json ? render_evaluation_json(rep) : render_evaluation_text(rep));
}

}  // namespace

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return ExitCode::Config;
    case ErrorKind::Parse:
    case ErrorKind::Schema:
    case ErrorKind::DuplicateKey:
    case ErrorKind::EmptyWindow:
    case ErrorKind::InsufficientGroup:
    case ErrorKind::VariableCount:
    case ErrorKind::ZeroVariance:
    case ErrorKind::Validation:
      return ExitCode::Data;
    case ErrorKind::SingularMatrix:
    case ErrorKind::DegenerateSeparation:
      return ExitCode::Fit;
    case ErrorKind::MissingData:
    case ErrorKind::MissingLabel:
      return ExitCode::Evaluation;
    case ErrorKind::Load:
      return ExitCode::Load;
    case ErrorKind::Binding:
    case ErrorKind::Domain:
    case ErrorKind::InsufficientCases:
      break;
  }
  return ExitCode::Other;
}

std::pair<std::string, GroupLabel> parse_label_assignment(const std::string& text) {
  const auto eq = text.rfind('=');
  if (eq == std::string::npos || eq == 0) {
    fail(ErrorKind::Config, "label assignment must look like BANK=bankrupt, got \"" + text + "\"");
  }
  const auto bank = trim(text.substr(0, eq));
  const auto label = parse_group_label(trim(text.substr(eq + 1)));
  if (bank.empty() || !label) {
    fail(ErrorKind::Config, "label assignment must look like BANK=bankrupt, got \"" + text + "\"");
  }
  return {bank, *label};
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::exception& e) {
      fail(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
    }
    for (const auto& [key, value] : doc.items()) {
      if (key == "label" && value.is_object()) {
        for (const auto& [bank, label] : value.items()) {
          set_key(cfg, "label", bank + "=" + json_scalar(key, label));
        }
      } else if (value.is_array()) {
        for (const auto& v : value) set_key(cfg, key, json_scalar(key, v));
      } else {
        set_key(cfg, key, json_scalar(key, value));
      }
    }
    return;
  }
  std::istringstream in(body);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::Config, "config line " + std::to_string(lineno) + " lacks '='");
    }
    set_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-group discriminant analysis for bank distress", "distress-lda"};
  app.require_subcommand(1);

  std::string config_path;
  std::string train, model, zones, mode, format, window, priors;
  std::vector<std::string> panels, labels;
  double alpha = 0.0;
  double threshold = 0.0;

  std::vector<CLI::Option*> opts;
  auto shared = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Config file (key=value lines or a JSON object)");
    sub->add_option("--train", train, "Training CSV");
    sub->add_option("--panel", panels, "Panel CSV, repeatable");
    sub->add_option("--model", model, "Model JSON (written by fit, read otherwise)");
    sub->add_option("--zones", zones, "derived, paper, or a zones JSON file");
    sub->add_option("--mode", mode, "raw or normalized");
    sub->add_option("--format", format, "text or json");
    sub->add_option("--alpha", alpha, "Significance level");
    sub->add_option("--collinearity-threshold", threshold, "Correlation flag level");
    sub->add_option("--window", window, "Averaging window YYYY:YYYY");
    sub->add_option("--priors", priors, "equal or proportional");
    sub->add_option("--label", labels, "BANK=bankrupt|nonbankrupt, repeatable");
  };
  auto* fit_cmd = app.add_subcommand("fit", "Fit the discriminant function on a training file");
  auto* diag_cmd = app.add_subcommand("diagnose", "Collinearity, Wilks and Box's M diagnostics");
  auto* cls_cmd = app.add_subcommand("classify", "Score and zone every panel row");
  auto* eval_cmd = app.add_subcommand("evaluate", "Per-year zone counts, hits and error rates");
  for (auto* sub : {fit_cmd, diag_cmd, cls_cmd, eval_cmd}) shared(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return static_cast<int>(ExitCode::Config);
  }

  CLI::App* sub = app.get_subcommands().front();
  auto given = [&](const char* name) { return sub->count(name) > 0; };

  try {
    RunConfig cfg;
    if (!given("--config")) {
      if (const char* env = std::getenv("DISTRESS_LDA_CONFIG"); env && *env) config_path = env;
    }
    if (!config_path.empty()) apply_config_text(cfg, read_file(config_path));

    if (given("--train")) cfg.train = train;
    if (given("--panel")) cfg.panels = panels;
    if (given("--model")) cfg.model = model;
    if (given("--zones")) cfg.zones = zones;
    if (given("--mode")) cfg.mode = mode;
    if (given("--format")) cfg.format = parse_format(format);
    if (given("--alpha")) cfg.alpha = alpha;
    if (given("--collinearity-threshold")) cfg.collinearity_threshold = threshold;
    if (given("--window")) cfg.window = window;
    if (given("--priors")) cfg.priors = priors;
    for (const auto& l : labels) cfg.labels.insert_or_assign(parse_label_assignment(l).first,
                                                             parse_label_assignment(l).second);
    validate(cfg);
    const auto range = parse_year_range(cfg.window);

    if (sub == fit_cmd) cmd_fit(cfg, range, cfg.model.has_value(), out);
    else if (sub == diag_cmd) cmd_diagnose(cfg, range, out);
    else if (sub == cls_cmd) cmd_classify(cfg, range, out);
    else cmd_evaluate(cfg, range, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(exit_code_for(e.kind()));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Other);
  }
  return 0;
}

}  // namespace distress
