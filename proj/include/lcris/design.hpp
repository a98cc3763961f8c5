// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lcris/farfield.hpp"
#include "lcris/unitcell.hpp"

#include <utility>

namespace lcris
{

/// Designed per-element phases. `wrapped` profiles hold values in [0, 2*pi).
struct PhaseProfile
{
  ElementMatrix phases;
  bool wrapped = false;
};

struct FeasibilityReport
{
  bool feasible = true;
  double max_required_phase = 0.0;
  double available_phase = 0.0;
  double clipped_fraction = 0.0;
};

PhaseProfile specular_profile(const ArrayGeometry &geom);

/// Linear profile reflecting `incident` toward `target`.
PhaseProfile steering_profile(const ArrayGeometry &geom, const Direction &incident,
                              const Direction &target);

/// Half-power width (deg) of the uniform aperture at broadside.
double diffraction_limited_width_deg(const ArrayGeometry &geom);

struct QuadraticOptions
{
  /// Angular resolution of the pattern the width is measured on.
  double grid_step_deg = 1.0;
  /// Half-size of the measurement window around the target, in degrees;
  /// zero picks a window from the requested width.
  double window_deg = 0.0;
  FarFieldOptions farfield{FarFieldMethod::direct, Execution::parallel, 1024};
  double tolerance_deg = 0.25;
  int max_iterations = 50;
};

struct QuadraticDesign
{
  PhaseProfile profile;
  /// Quadratic phase coefficient k / (2F) in rad/m^2 (zero: pure steering).
  double coefficient = 0.0;
  double measured_width_deg = 0.0;
  Direction measured_peak;
  int iterations = 0;
  bool converged = false;
};

/// Steering profile plus a defocusing term (k / 2F)(x^2 + y^2). The virtual
/// focal length F starts at D / beamwidth and is calibrated until the
/// measured half-power width is within tolerance of the request with the
/// peak at most one grid step from the target.
QuadraticDesign quadratic_profile(const ArrayGeometry &geom, const Direction &incident,
                                  const Direction &target, double beamwidth_deg,
                                  const QuadraticOptions &options = {});

/// Profile with a fixed quadratic coefficient (rad/m^2), no calibration.
PhaseProfile quadratic_profile_with_coefficient(const ArrayGeometry &geom,
                                                const Direction &incident,
                                                const Direction &target, double coefficient);

/// Reduces phases modulo 2*pi and clips anything above `available`.
std::pair<PhaseProfile, FeasibilityReport> wrap_to_range(const PhaseProfile &profile,
                                                         double available);

/// Snaps wrapped phases to 2^bits uniform levels; exact ties go to the lower
/// level.
PhaseProfile quantize(const PhaseProfile &profile, int bits);

struct VoltageMap
{
  ElementMatrix voltages;
  FeasibilityReport report;
};

VoltageMap temperature_aware_voltages(const PhaseProfile &profile, const UnitCellDesign &design,
                                      const LcMixture &mix, double temperature,
                                      double frequency_ghz, const TemperatureModel &tmodel,
                                      Execution exec = Execution::parallel);

/// Phases the unit cells actually produce for `voltages` at the given
/// operating point.
ElementMatrix realized_phases(const ElementMatrix &voltages, const UnitCellDesign &design,
                              const LcMixture &mix, double temperature, double frequency_ghz,
                              const TemperatureModel &tmodel,
                              Execution exec = Execution::parallel);

} // namespace lcris
