// SPDX-License-Identifier: Apache-2.0

#include "lcris/unitcell.hpp"

#include <cmath>
#include <numbers>

namespace lcris
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

// Slack for targets computed through a different floating-point route than
// max_phase_shift itself.
constexpr double reach_slack = 1e-12;

void check_voltage(const UnitCellDesign &design, double v)
{
  if (!(v >= 0.0 && v <= design.v_max))
    throw VoltageRangeError("bias voltage " + std::to_string(v) + " V outside [0, " +
                            std::to_string(design.v_max) + "] V");
}

void check_frequency(double frequency_ghz)
{
  if (!(frequency_ghz > 0.0))
    throw std::invalid_argument("frequency must be positive");
}

double anisotropy_ratio(const LcMixture &mix, double temperature, const TemperatureModel &tmodel)
{
  const double nominal = delta_epsilon(mix);
  if (nominal <= 0.0)
    return 0.0;
  return delta_epsilon_at_temperature(mix, temperature, tmodel) / nominal;
}

} // namespace

const char *to_string(CellKind kind)
{
  return kind == CellKind::phased_array ? "phased_array" : "reflect_array";
}

CellKind cell_kind_from_string(const std::string &text)
{
  if (text == "phased_array")
    return CellKind::phased_array;
  if (text == "reflect_array")
    return CellKind::reflect_array;
  throw std::invalid_argument("unknown unit-cell kind '" + text +
                              "' (expected phased_array or reflect_array)");
}

void validate(const UnitCellDesign &d)
{
  auto fail = [](const std::string &what) { throw std::invalid_argument("unit cell: " + what); };
  if (!(d.v_threshold >= 0.0 && d.v_threshold < d.v_mid && d.v_mid < d.v_max))
    fail("voltages must satisfy 0 <= v_threshold < v_mid < v_max");
  if (!(d.v_slope > 0.0))
    fail("v_slope must be positive");
  if (!(d.d_lc > 0.0))
    fail("d_lc must be positive");
  if (!(d.design_frequency > 0.0))
    fail("design_frequency must be positive");
  if (!(d.insertion_loss_db >= 0.0))
    fail("insertion loss must be non-negative");
  if (d.kind == CellKind::phased_array)
  {
    if (!(d.l_ps > 0.0))
      fail("l_ps must be positive for a phased-array cell");
    if (!(d.insertion_loss_anchor_lps_mm > 0.0))
      fail("insertion-loss anchor length must be positive");
  }
  else if (!(d.max_phase_reflect > 0.0 && d.max_phase_reflect <= two_pi))
  {
    fail("max_phase_reflect must lie in (0, 2*pi]");
  }
}

double full_tunability_length(const LcMixture &mix, double temperature, double frequency_ghz,
                              const TemperatureModel &tmodel)
{
  check_frequency(frequency_ghz);
  const double eps_max = mix.eps_perp + delta_epsilon_at_temperature(mix, temperature, tmodel);
  const double contrast = std::sqrt(eps_max) - std::sqrt(mix.eps_perp);
  if (!(contrast > 0.0))
    throw std::domain_error("mixture '" + mix.name + "' has no tunability at this temperature");
  const double wavelength = speed_of_light / (frequency_ghz * 1e9);
  // Two passes through the line: 2 * k * l * contrast = 2*pi.
  return wavelength / (2.0 * contrast) * 1e3;
}

UnitCellDesign default_phased_array(const TemperatureModel &tmodel)
{
  UnitCellDesign d;
  d.kind = CellKind::phased_array;
  d.d_lc = 4.6;
  d.design_frequency = 28.0;
  d.insertion_loss_db = 4.5;
  d.insertion_loss_anchor_lps_mm = full_tunability_length(
      lookup_mixture("GT7-29001"), tmodel.reference_temperature, 28.0, tmodel);
  d.l_ps = d.insertion_loss_anchor_lps_mm;
  return d;
}

UnitCellDesign default_reflect_array()
{
  UnitCellDesign d;
  d.kind = CellKind::reflect_array;
  d.d_lc = 100.0;
  d.insertion_loss_db = 8.0;
  d.max_phase_reflect = two_pi;
  return d;
}

TuningCurve::TuningCurve(const UnitCellDesign &design)
    : v_threshold_(design.v_threshold), v_max_(design.v_max), v_slope_(design.v_slope),
      norm_(-std::expm1(-(design.v_max - design.v_threshold) / design.v_slope))
{
}

double TuningCurve::operator()(double v) const
{
  if (v <= v_threshold_)
    return 0.0;
  if (v >= v_max_)
    return 1.0;
  return -std::expm1(-(v - v_threshold_) / v_slope_) / norm_;
}

double TuningCurve::inverse(double s) const
{
  if (s <= 0.0)
    return v_threshold_;
  if (s >= 1.0)
    return v_max_;
  return v_threshold_ - v_slope_ * std::log1p(-s * norm_);
}

TargetUnreachableError::TargetUnreachableError(double target, double available)
    : std::domain_error("target phase " + std::to_string(target) +
                        " rad exceeds the available range " + std::to_string(available) + " rad"),
      target_(target), available_(available)
{
}

double effective_permittivity(const LcMixture &mix, double v, double temperature,
                              const UnitCellDesign &design, const TemperatureModel &tmodel)
{
  check_voltage(design, v);
  const double s = TuningCurve(design)(v);
  if (s == 0.0)
    return mix.eps_perp;
  return mix.eps_perp + delta_epsilon_at_temperature(mix, temperature, tmodel) * s;
}

double phase_shift(const UnitCellDesign &design, const LcMixture &mix, double v,
                   double temperature, double frequency_ghz, const TemperatureModel &tmodel)
{
  check_voltage(design, v);
  check_frequency(frequency_ghz);
  if (design.kind == CellKind::reflect_array)
    return design.max_phase_reflect * anisotropy_ratio(mix, temperature, tmodel) *
           TuningCurve(design)(v);

  const double eps = effective_permittivity(mix, v, temperature, design, tmodel);
  const double k0 = two_pi * frequency_ghz * 1e9 / speed_of_light;
  return 2.0 * k0 * (design.l_ps * 1e-3) * (std::sqrt(eps) - std::sqrt(mix.eps_perp));
}

double max_phase_shift(const UnitCellDesign &design, const LcMixture &mix, double temperature,
                       double frequency_ghz, const TemperatureModel &tmodel)
{
  return phase_shift(design, mix, design.v_max, temperature, frequency_ghz, tmodel);
}

InsertionLoss insertion_loss(const UnitCellDesign &design)
{
  InsertionLoss out;
  if (design.kind == CellKind::phased_array)
  {
    out.db = design.insertion_loss_db * (design.l_ps / design.insertion_loss_anchor_lps_mm);
    return out;
  }
  out.db = design.insertion_loss_db;
  if (out.db < 6.0 || out.db > 10.0)
    out.warning = "reflect-array insertion loss " + std::to_string(out.db) +
                  " dB is outside the typical 6-10 dB range";
  return out;
}

double loss_amplitude(double loss_db) { return std::pow(10.0, -loss_db / 20.0); }

double voltage_for_phase(const UnitCellDesign &design, const LcMixture &mix, double temperature,
                         double frequency_ghz, const TemperatureModel &tmodel,
                         double target_phase)
{
  const double available = max_phase_shift(design, mix, temperature, frequency_ghz, tmodel);
  if (target_phase < 0.0 || target_phase > available * (1.0 + reach_slack) + reach_slack)
    throw TargetUnreachableError(target_phase, available);
  if (target_phase == 0.0)
    return 0.0;
  if (target_phase >= available)
    return design.v_max;

  auto phase_at = [&](double v) {
    return phase_shift(design, mix, v, temperature, frequency_ghz, tmodel);
  };
  double lo = design.v_threshold;
  double hi = design.v_max;
  for (int iter = 0; iter < 200; ++iter)
  {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    const double phase = phase_at(mid);
    if (phase == target_phase)
      return mid;
    (phase < target_phase ? lo : hi) = mid;
  }
  // Bracket has collapsed to adjacent doubles; pick the closer end.
  return std::abs(phase_at(lo) - target_phase) <= std::abs(phase_at(hi) - target_phase) ? lo : hi;
}

} // namespace lcris
