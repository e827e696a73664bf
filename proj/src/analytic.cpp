#include "txml/analytic.hpp"

#include <cmath>
#include <numbers>

#include "txml/errors.hpp"
#include "txml/numio.hpp"

namespace txml {
namespace {

void require_finite_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite and positive, got " +
                          format_double(v));
    }
}

}  // namespace

void MicrostripGeometry::validate() const {
    if (!(eps_r >= 1.0)) {
        throw DomainError("eps_r must be >= 1, got " + format_double(eps_r));
    }
    // The impedance formula is the wide-strip form; narrow strips (w/h < 1)
    // follow a different expression and are rejected rather than extrapolated.
    if (!(w_over_h >= 1.0)) {
        throw DomainError("w_over_h must be >= 1 for the microstrip model, got " +
                          format_double(w_over_h));
    }
}

void PatchGeometry::validate() const {
    if (!(eps_r >= 1.0)) {
        throw DomainError("eps_r must be >= 1, got " + format_double(eps_r));
    }
    require_finite_positive(w_over_h, "w_over_h");

    const bool has_physical = patch_length_m.has_value() || substrate_height_m.has_value();
    if (effective_length_m && has_physical) {
        throw ConfigError(
            "patch geometry must supply either effective_length_m or "
            "patch_length_m + substrate_height_m, not both");
    }
    if (effective_length_m) {
        require_finite_positive(*effective_length_m, "effective_length_m");
        return;
    }
    if (!patch_length_m || !substrate_height_m) {
        throw ConfigError(
            "patch geometry needs effective_length_m, or both patch_length_m and "
            "substrate_height_m");
    }
    require_finite_positive(*patch_length_m, "patch_length_m");
    require_finite_positive(*substrate_height_m, "substrate_height_m");
}

double effective_permittivity(double eps_r, double w_over_h) {
    if (!(eps_r >= 1.0)) {
        throw DomainError("eps_r must be >= 1, got " + format_double(eps_r));
    }
    if (!(w_over_h > 0.0)) {
        throw DomainError("w_over_h must be > 0, got " + format_double(w_over_h));
    }
    return 0.5 * (eps_r + 1.0) + 0.5 * (eps_r - 1.0) / std::sqrt(1.0 + 12.0 / w_over_h);
}

double microstrip_impedance(const MicrostripGeometry& geom) {
    geom.validate();
    const double eps_eff = effective_permittivity(geom.eps_r, geom.w_over_h);
    const double w = geom.w_over_h;
    return 120.0 * std::numbers::pi /
           (std::sqrt(eps_eff) * (w + 1.393 + (2.0 / 3.0) * std::log(w + 1.444)));
}

double patch_length_extension(double eps_eff, double w_over_h, double substrate_height_m,
                              DeltaLVariant variant) {
    require_finite_positive(w_over_h, "w_over_h");
    require_finite_positive(substrate_height_m, "substrate_height_m");
    if (!(eps_eff > 0.258)) {
        throw SingularityError("patch length extension has a pole at eps_eff = 0.258; got " +
                               format_double(eps_eff));
    }
    const double dl = 0.412 * substrate_height_m * ((eps_eff + 0.3) * (w_over_h + 0.264)) /
                      ((eps_eff - 0.258) * (w_over_h + 0.8));
    // The printed variant drops the (w/h + 0.8) divisor, so it relates to the
    // standard form by exactly that factor.
    return variant == DeltaLVariant::printed ? dl * (w_over_h + 0.8) : dl;
}

double patch_resonant_frequency(const PatchGeometry& geom, DeltaLVariant variant) {
    geom.validate();
    const double eps_eff = effective_permittivity(geom.eps_r, geom.w_over_h);
    double total_length;
    if (geom.effective_length_m) {
        total_length = *geom.effective_length_m;
    } else {
        const double dl = patch_length_extension(eps_eff, geom.w_over_h,
                                                 *geom.substrate_height_m, variant);
        total_length = *geom.patch_length_m + 2.0 * dl;
    }
    return kSpeedOfLight / (2.0 * std::sqrt(eps_eff) * total_length);
}

std::string_view line_kind_name(LineKind kind) {
    switch (kind) {
        case LineKind::microstrip_impedance: return "microstrip_impedance";
        case LineKind::patch_frequency: return "patch_frequency";
    }
    throw UnknownKindError("invalid LineKind value");
}

LineKind parse_line_kind(std::string_view name) {
    if (name == "microstrip_impedance") return LineKind::microstrip_impedance;
    if (name == "patch_frequency") return LineKind::patch_frequency;
    throw UnknownKindError("unknown line model kind: '" + std::string(name) + "'");
}

std::string_view unit_name(Unit unit) {
    switch (unit) {
        case Unit::ohm: return "ohm";
        case Unit::hertz: return "hertz";
    }
    throw UnknownKindError("invalid Unit value");
}

Unit parse_unit(std::string_view name) {
    if (name == "ohm") return Unit::ohm;
    if (name == "hertz") return Unit::hertz;
    throw UnknownKindError("unknown unit: '" + std::string(name) + "'");
}

Unit line_unit(LineKind kind) {
    return kind == LineKind::microstrip_impedance ? Unit::ohm : Unit::hertz;
}

std::string_view quantity_label(LineKind kind) {
    return kind == LineKind::microstrip_impedance ? "Impedance" : "Resonant Frequency";
}

double LineModel::operator()(double eps_r, double w_over_h, const ParamMap& fixed) const {
    switch (kind_) {
        case LineKind::microstrip_impedance: {
            if (!fixed.empty()) {
                throw ConfigError("microstrip_impedance takes no fixed parameters, got '" +
                                  fixed.begin()->first + "'");
            }
            return microstrip_impedance({eps_r, w_over_h});
        }
        case LineKind::patch_frequency: {
            PatchGeometry geom;
            geom.eps_r = eps_r;
            geom.w_over_h = w_over_h;
            DeltaLVariant variant = DeltaLVariant::standard;
            for (const auto& [name, value] : fixed) {
                if (name == "effective_length_m") {
                    geom.effective_length_m = value;
                } else if (name == "patch_length_m") {
                    geom.patch_length_m = value;
                } else if (name == "substrate_height_m") {
                    geom.substrate_height_m = value;
                } else if (name == "delta_l_variant") {
                    if (value != 0.0 && value != 1.0) {
                        throw ConfigError("delta_l_variant must be 0 or 1, got " +
                                          format_double(value));
                    }
                    variant = value == 1.0 ? DeltaLVariant::printed : DeltaLVariant::standard;
                } else {
                    throw ConfigError("unknown fixed parameter for patch_frequency: '" +
                                      name + "'");
                }
            }
            return patch_resonant_frequency(geom, variant);
        }
    }
    throw UnknownKindError("invalid LineKind value");
}

LineModel line_model(LineKind kind) { return LineModel(kind); }

LineModel line_model(std::string_view kind_name) {
    return LineModel(parse_line_kind(kind_name));
}

}  // namespace txml
