#pragma once

#include <string>

#include "distress/classification.hpp"
#include "distress/diagnostics.hpp"
#include "distress/model_io.hpp"

namespace distress {

struct DiagnosticBattery {
  CollinearityReport collinearity;
  WilksResult wilks;
  std::optional<BoxMResult> box_m;  // absent when the model file carries no scores
  std::string box_m_skipped;        // reason when box_m is absent
  CanonicalSummary canonical;
};

DiagnosticBattery run_diagnostics(const DiscriminantModel& model, double alpha = kDefaultAlpha,
                                  double collinearity_threshold = kDefaultCollinearityThreshold);

/// "▼ -8.98%" style cell.
std::string format_score(double score, ZoneLabel zone);

std::string render_fit_text(const ModelFile& file, const TrainingSet& raw, const TrainingSet& tsz,
                            const ConfusionMatrix& cm);
std::string render_fit_json(const ModelFile& file, const ConfusionMatrix& cm);

std::string render_diagnostics_text(const DiagnosticBattery& d);
std::string render_diagnostics_json(const DiagnosticBattery& d);

std::string render_evaluation_text(const EvaluationReport& rep);
std::string render_evaluation_json(const EvaluationReport& rep);

}  // namespace distress
