#pragma once

#include <string>
#include <string_view>

#include "distress/classification.hpp"
#include "distress/lda.hpp"
#include "distress/normalization.hpp"

namespace distress {

/// A model file: the discriminant function plus the normalization it was fitted
/// under, enough to classify without the training data.
struct ModelFile {
  DiscriminantModel model;
  NormalizationStats stats;
  std::string note;
};

std::string model_to_json(const ModelFile& file);
/// Throws a load error on malformed or inconsistent documents.
ModelFile model_from_json(std::string_view text);

std::string zones_to_json(const ClassificationZones& zones);
ClassificationZones zones_from_json(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace distress
