// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lcris/material.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace lcris
{

inline constexpr double speed_of_light = 299792458.0;

enum class CellKind
{
  reflect_array,
  phased_array,
};

const char *to_string(CellKind kind);
CellKind cell_kind_from_string(const std::string &text);

/// Geometry and bias calibration of one RIS element.
///
/// Thickness in um, phase-shifter length in mm, frequency in GHz, voltages in
/// volts. For phased arrays the insertion loss scales from the anchor pair
/// (insertion_loss_db, insertion_loss_anchor_lps_mm); for reflect arrays
/// insertion_loss_db is used as is.
struct UnitCellDesign
{
  CellKind kind = CellKind::phased_array;
  double d_lc = 4.6;
  double l_ps = 0.0;
  double design_frequency = 28.0;
  double v_threshold = 1.0;
  double v_max = 10.0;
  double v_mid = 3.0;
  double v_slope = 2.0;
  double insertion_loss_db = 4.5;
  double insertion_loss_anchor_lps_mm = 0.0;
  double max_phase_reflect = 0.0;
};

/// Throws std::invalid_argument on an invariant violation.
void validate(const UnitCellDesign &design);

/// Phase-shifter length (mm) at which the phased-array cell reaches exactly
/// 2*pi at full bias for the given mixture, temperature and frequency.
double full_tunability_length(const LcMixture &mix, double temperature, double frequency_ghz,
                              const TemperatureModel &tmodel);

/// Phased-array cell anchored at 4.5 dB for the GT7-29001 full-tunability
/// length at 28 GHz and the reference temperature; `l_ps` defaults to that
/// length.
UnitCellDesign default_phased_array(const TemperatureModel &tmodel = {});

/// Reflect-array cell with a 100 um layer, 8 dB loss and 2*pi range.
UnitCellDesign default_reflect_array();

/// Normalized LC tuning state in [0, 1]: zero up to the threshold, then a
/// saturating exponential reaching exactly 1 at v_max.
class TuningCurve
{
public:
  explicit TuningCurve(const UnitCellDesign &design);

  double operator()(double v) const;
  /// Smallest voltage with saturation `s`, for s in [0, 1].
  double inverse(double s) const;

private:
  double v_threshold_;
  double v_max_;
  double v_slope_;
  double norm_;
};

class VoltageRangeError : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

class TargetUnreachableError : public std::domain_error
{
public:
  TargetUnreachableError(double target, double available);
  double target() const { return target_; }
  double available() const { return available_; }

private:
  double target_;
  double available_;
};

double effective_permittivity(const LcMixture &mix, double v, double temperature,
                              const UnitCellDesign &design, const TemperatureModel &tmodel);

/// Reflection phase (rad) relative to the unbiased state.
double phase_shift(const UnitCellDesign &design, const LcMixture &mix, double v,
                   double temperature, double frequency_ghz, const TemperatureModel &tmodel);

double max_phase_shift(const UnitCellDesign &design, const LcMixture &mix, double temperature,
                       double frequency_ghz, const TemperatureModel &tmodel);

struct InsertionLoss
{
  double db = 0.0;
  std::optional<std::string> warning;
};

InsertionLoss insertion_loss(const UnitCellDesign &design);

/// Linear amplitude factor 10^(-L/20).
double loss_amplitude(double loss_db);

/// Bias voltage realizing `target_phase`, found by bisection. Returns 0 for a
/// zero target and v_max for the full-range target.
double voltage_for_phase(const UnitCellDesign &design, const LcMixture &mix, double temperature,
                         double frequency_ghz, const TemperatureModel &tmodel,
                         double target_phase);

} // namespace lcris
