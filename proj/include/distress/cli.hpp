#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "distress/dataset.hpp"
#include "distress/errors.hpp"

namespace distress {

enum class ExitCode : int {
  Ok = 0,
  Other = 1,
  Config = 2,
  Data = 3,
  Fit = 4,
  Evaluation = 5,
  Load = 6,
};

ExitCode exit_code_for(ErrorKind kind);

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::optional<std::string> train;
  std::vector<std::string> panels;
  std::optional<std::string> model;
  std::string zones = "derived";
  std::string mode = "raw";
  OutputFormat format = OutputFormat::Text;
  double alpha = 0.05;
  double collinearity_threshold = 0.8;
  std::string window = "2012:2015";
  std::string priors = "equal";
  std::map<std::string, GroupLabel> labels;
};

/// Reads a config document: a JSON object, or key=value lines with '#' comments.
/// Recognised keys mirror the long flag names.
void apply_config_text(RunConfig& cfg, const std::string& text);

/// Parses "BANK=bankrupt" or "BANK=nonbankrupt".
std::pair<std::string, GroupLabel> parse_label_assignment(const std::string& text);

/// Runs the command line; returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace distress
