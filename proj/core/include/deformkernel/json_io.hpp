#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "deformkernel/deformation.hpp"
#include "deformkernel/potential.hpp"
#include "deformkernel/surface.hpp"

namespace dk {

// Key order is fixed (ordered_json) so identical runs serialize identically.
using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json cvec_to_json(const CVec& v);
CVec cvec_from_json(const Json& j);

Json surface_time_to_json(const SurfaceTime& t);
SurfaceTime surface_time_from_json(const Json& j);

Json potential_to_json(const PotentialMeasure& m);
PotentialMeasure potential_from_json(const Json& j);

/// Series payload of the `series` subcommand:
/// {"schema":1, "x":..., "y":..., "coefficients":[[re,im],...], "exact":bool}
Json coefficient_series_to_json(const CoefficientSeries& s, const CVec& x,
                                const CVec& y);
CoefficientSeries coefficient_series_from_json(const Json& j);

// CLI scalar formats: complex "re,im" (bare "re" allowed), surface time
// "r,theta", complex vectors "re,im;re,im;..." per component.
Complex parse_complex(const std::string& text);
SurfaceTime parse_surface_time(const std::string& text);
CVec parse_cvec(const std::string& text);

}  // namespace dk
