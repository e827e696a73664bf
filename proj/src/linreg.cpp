#include "txml/linreg.hpp"

#include <cmath>

#include "txml/errors.hpp"

namespace txml {

LinearModel fit_ols(const Dataset& dataset, const kernels::Kernels& k) {
    dataset.validate();
    const std::vector<double> xs = dataset.xs();
    const std::vector<double> ys = dataset.ys();
    const std::size_t n = xs.size();
    if (n < 2) {
        throw InsufficientDataError("OLS needs at least 2 samples, got " + std::to_string(n));
    }

    const double x_mean = k.sum(xs.data(), n) / static_cast<double>(n);
    const double y_mean = k.sum(ys.data(), n) / static_cast<double>(n);

    std::vector<double> xc(n), yc(n);
    k.scale_shift(xs.data(), 1.0, -x_mean, xc.data(), n);
    k.scale_shift(ys.data(), 1.0, -y_mean, yc.data(), n);
    const double sxx = k.dot(xc.data(), xc.data(), n);
    const double sxy = k.dot(xc.data(), yc.data(), n);
    if (!(sxx > 0.0)) {
        throw InsufficientDataError("OLS needs at least 2 distinct x values");
    }

    LinearModel m;
    m.slope = sxy / sxx;
    m.intercept = y_mean - m.slope * x_mean;
    if (!std::isfinite(m.slope) || !std::isfinite(m.intercept)) {
        throw DomainError("OLS coefficients are not finite");
    }
    k.minmax(xs.data(), n, &m.x_min, &m.x_max);
    k.minmax(ys.data(), n, &m.y_min, &m.y_max);
    m.trained_on = dataset.descriptor();
    return m;
}

double predict_linear(const LinearModel& model, double x) {
    return model.slope * x + model.intercept;
}

}  // namespace txml
