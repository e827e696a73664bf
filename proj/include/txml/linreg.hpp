#pragma once

#include <string>

#include "txml/dataset.hpp"

namespace txml {

// Ordinary-least-squares line y = slope*x + intercept, fitted in raw units
// (OLS is scale-equivariant, and raw coefficients read directly in ohms/Hz).
struct LinearModel {
    double slope = 0.0;
    double intercept = 0.0;
    // Data bounding box of the fit dataset; provenance only, predictions do
    // not use it (kept so the shared model-file scaler line is meaningful).
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    std::string trained_on;  // dataset descriptor
};

// Closed-form normal-equations fit. InsufficientDataError with fewer than
// two distinct x values.
LinearModel fit_ols(const Dataset& dataset,
                    const kernels::Kernels& k = kernels::active_kernels());

double predict_linear(const LinearModel& model, double x);

}  // namespace txml
