#pragma once

#include <filesystem>
#include <string>

#include "txml/eval.hpp"

namespace txml {

enum class PlotKind { prediction, error };

// Standalone static SVG, one 800x600 root element, no scripting. Prediction
// plots draw the actual series dotted and the predicted series dashed; error
// plots draw the absolute error. Byte output is deterministic for a fixed
// report. Hertz-valued reports are displayed in MHz.
std::string render_plot_svg(const EvalReport& report, PlotKind kind);

// render_plot_svg + atomic file write.
void emit_plot_svg(const EvalReport& report, PlotKind kind, const std::filesystem::path& path);

}  // namespace txml
