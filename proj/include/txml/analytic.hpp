#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

// Closed-form models for the two planar line types: microstrip characteristic
// impedance and rectangular-patch resonant frequency. These are the exact
// ground truth every sweep, surrogate fit and evaluation is scored against.

namespace txml {

// Fixed at 3.0e8 m/s: the patch frequency grids are calibrated against this
// value (the 9.5 mm effective length is only round under it).
inline constexpr double kSpeedOfLight = 3.0e8;

struct MicrostripGeometry {
    double eps_r = 1.0;     // relative dielectric constant, >= 1
    double w_over_h = 1.0;  // strip width / substrate height, >= 1 (wide-strip regime)

    void validate() const;
};

struct PatchGeometry {
    double eps_r = 1.0;
    double w_over_h = 1.0;  // patch width / substrate height, > 0

    // Exactly one of the two length forms drives the frequency:
    // either the physical pair (patch_length_m + substrate_height_m, with the
    // fringing extension computed), or a calibrated effective_length_m.
    std::optional<double> substrate_height_m;
    std::optional<double> patch_length_m;
    std::optional<double> effective_length_m;

    void validate() const;
};

enum class DeltaLVariant {
    standard,  // 0.412 h (e+0.3)(w/h+0.264) / ((e-0.258)(w/h+0.8))
    printed,   // same numerator, without the (w/h+0.8) divisor
};

// (eps_r+1)/2 + (eps_r-1)/2 * (1 + 12 h/w)^(-1/2). Shared by both line types.
double effective_permittivity(double eps_r, double w_over_h);

// 120*pi / (sqrt(eps_eff) * (w/h + 1.393 + 2/3 ln(w/h + 1.444))), ohms.
double microstrip_impedance(const MicrostripGeometry& geom);

// Fringing-field length extension, meters. SingularityError at eps_eff <= 0.258.
double patch_length_extension(double eps_eff, double w_over_h, double substrate_height_m,
                              DeltaLVariant variant = DeltaLVariant::standard);

// c / (2 sqrt(eps_eff) (L + 2 dL)), hertz; uses effective_length_m directly
// when the geometry supplies it.
double patch_resonant_frequency(const PatchGeometry& geom,
                                DeltaLVariant variant = DeltaLVariant::standard);

enum class LineKind { microstrip_impedance, patch_frequency };
enum class Unit { ohm, hertz };

std::string_view line_kind_name(LineKind kind);
LineKind parse_line_kind(std::string_view name);  // UnknownKindError
std::string_view unit_name(Unit unit);
Unit parse_unit(std::string_view name);
Unit line_unit(LineKind kind);
std::string_view quantity_label(LineKind kind);  // "Impedance" / "Resonant Frequency"

// Fixed parameters for a line model, by name. Recognized keys for
// patch_frequency: "effective_length_m", or "patch_length_m" together with
// "substrate_height_m", optionally "delta_l_variant" (0 standard, 1 printed).
// microstrip_impedance takes none.
using ParamMap = std::map<std::string, double>;

// Uniform evaluator over all registered line kinds, so sweeps and training
// treat them alike. Pure; agrees pointwise with the dedicated operations.
class LineModel {
public:
    explicit LineModel(LineKind kind) : kind_(kind) {}

    LineKind kind() const { return kind_; }
    Unit unit() const { return line_unit(kind_); }

    double operator()(double eps_r, double w_over_h, const ParamMap& fixed = {}) const;

private:
    LineKind kind_;
};

LineModel line_model(LineKind kind);
LineModel line_model(std::string_view kind_name);  // UnknownKindError

}  // namespace txml
