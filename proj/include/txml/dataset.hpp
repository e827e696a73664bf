#pragma once

#include <filesystem>
#include <vector>

#include "txml/analytic.hpp"
#include "txml/kernels/kernels.hpp"

namespace txml {

struct Sample {
    double x = 0.0;  // w/h ratio
    double y = 0.0;  // target quantity in the dataset's unit
};

// One sweep of a line model at fixed eps_r / fixed parameters. Samples are
// strictly increasing in x; y values are finite and positive.
struct Dataset {
    LineKind kind = LineKind::microstrip_impedance;
    double eps_r = 1.0;
    ParamMap fixed_params;
    std::vector<Sample> samples;
    Unit unit = Unit::ohm;

    void validate() const;

    std::vector<double> xs() const;
    std::vector<double> ys() const;

    // "kind eps_r=.. x=[lo,hi] n=.." provenance string for reports.
    std::string descriptor() const;
};

// Evaluates the line model at x = x_min, x_min+step, ..., including every
// grid point up to x_max + step/2 (half-step tolerance so the intended
// endpoint survives rounding). Deterministic; bit-identical across calls.
Dataset generate_sweep(LineKind kind, double eps_r, const ParamMap& fixed_params,
                       double x_min, double x_max, double step);

// Affine [min,max] -> [0,1] map for both axes of a dataset.
struct Scaler {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;

    double apply_x(double x) const { return (x - x_min) / (x_max - x_min); }
    double apply_y(double y) const { return (y - y_min) / (y_max - y_min); }
    double invert_x(double u) const { return u * (x_max - x_min) + x_min; }
    double invert_y(double u) const { return u * (y_max - y_min) + y_min; }

    // Array forms route through the kernel backend.
    void apply_x(const double* in, double* out, std::size_t n,
                 const kernels::Kernels& k = kernels::active_kernels()) const;
    void apply_y(const double* in, double* out, std::size_t n,
                 const kernels::Kernels& k = kernels::active_kernels()) const;
    void invert_y(const double* in, double* out, std::size_t n,
                  const kernels::Kernels& k = kernels::active_kernels()) const;
};

// DegenerateRangeError when either axis has min == max.
Scaler fit_scaler(const Dataset& dataset,
                  const kernels::Kernels& k = kernels::active_kernels());

// CSV schema (UTF-8, LF, header mandatory):
//   kind,eps_r,param_name,param_value,x_w_over_h,y_value,y_unit
// Metadata columns repeat on every row; rows sorted ascending by x. Values
// are shortest round-trip decimals, so read(write(d)) is bit-identical.
// Datasets with several fixed parameters join names/values with ';' inside
// the two param cells.
void write_csv(const Dataset& dataset, const std::filesystem::path& path);
Dataset read_csv(const std::filesystem::path& path);

}  // namespace txml
