#pragma once

#include <filesystem>
#include <variant>

#include "txml/linreg.hpp"
#include "txml/mlp.hpp"

namespace txml {

// Versioned line-oriented text format shared by both model kinds:
//   txml-model v1
//   kind <ols|mlp>
//   scaler <x_min> <x_max> <y_min> <y_max>
// then for ols:   coef <slope> <intercept>
// and for mlp:    layout <sizes...> <activation>
//                 seed <n>
//                 per layer: one "w <layer> <row> <values...>" line per
//                 weight row followed by one "b <layer> <values...>" line.
// All numbers are shortest round-trip decimals, so load(save(m)) predicts
// bit-identically.

using AnyModel = std::variant<LinearModel, MlpModel>;

void save_model(const LinearModel& model, const std::filesystem::path& path);
void save_model(const MlpModel& model, const std::filesystem::path& path);
void save_model(const AnyModel& model, const std::filesystem::path& path);

// VersionError / TruncatedFileError / DimensionError / ParseError on bad files.
AnyModel load_model(const std::filesystem::path& path);

double predict(const AnyModel& model, double x);
std::string model_descriptor(const AnyModel& model);

}  // namespace txml
