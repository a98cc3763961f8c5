// SPDX-License-Identifier: Apache-2.0

#include "lcris/design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lcris
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double deg = std::numbers::pi / 180.0;

double wrap_phase(double phase)
{
  double w = std::fmod(phase, two_pi);
  if (w < 0.0)
    w += two_pi;
  // fmod of a tiny negative value can land exactly on 2*pi after the shift.
  if (w >= two_pi)
    w = 0.0;
  return w;
}

AngularGrid measurement_window(const Direction &target, double half_width, double step)
{
  auto lower = [&](double centre) {
    return std::max(-90.0, step * std::floor((centre - half_width) / step));
  };
  auto upper = [&](double centre) {
    return std::min(90.0, step * std::ceil((centre + half_width) / step));
  };
  return AngularGrid::phi_theta(lower(target.phi), upper(target.phi), step, lower(target.theta),
                                upper(target.theta), step);
}

struct WidthSample
{
  double coefficient = 0.0;
  double width = 0.0;
  Direction peak;
  bool on_target = false;
};

} // namespace

PhaseProfile specular_profile(const ArrayGeometry &geom)
{
  validate(geom);
  return {ElementMatrix::Zero(geom.n_rows, geom.n_cols), false};
}

PhaseProfile steering_profile(const ArrayGeometry &geom, const Direction &incident,
                              const Direction &target)
{
  validate(geom);
  validate(incident);
  validate(target);
  const double k = geom.wavenumber();
  const double su = target.u() + incident.u();
  const double sv = target.v() + incident.v();
  ElementMatrix phases(geom.n_rows, geom.n_cols);
  for (int n = 0; n < geom.n_rows; ++n)
    for (int m = 0; m < geom.n_cols; ++m)
      phases(n, m) = -k * (geom.x(n) * su + geom.y(m) * sv);
  return {std::move(phases), false};
}

double diffraction_limited_width_deg(const ArrayGeometry &geom)
{
  return 0.886 * geom.wavelength / geom.aperture_width() / deg;
}

PhaseProfile quadratic_profile_with_coefficient(const ArrayGeometry &geom,
                                                const Direction &incident,
                                                const Direction &target, double coefficient)
{
  PhaseProfile profile = steering_profile(geom, incident, target);
  for (int n = 0; n < geom.n_rows; ++n)
  {
    const double x = geom.x(n);
    for (int m = 0; m < geom.n_cols; ++m)
    {
      const double y = geom.y(m);
      profile.phases(n, m) += coefficient * (x * x + y * y);
    }
  }
  return profile;
}

QuadraticDesign quadratic_profile(const ArrayGeometry &geom, const Direction &incident,
                                  const Direction &target, double beamwidth_deg,
                                  const QuadraticOptions &options)
{
  validate(geom);
  const double limit = diffraction_limited_width_deg(geom);
  if (beamwidth_deg < limit * (1.0 - 1e-9))
    throw std::invalid_argument("requested beamwidth " + std::to_string(beamwidth_deg) +
                                " deg is below the diffraction limit " + std::to_string(limit) +
                                " deg");

  const double step = options.grid_step_deg;
  const double window =
      options.window_deg > 0.0 ? options.window_deg : std::max(10.0, 3.0 * beamwidth_deg + 5.0);
  const AngularGrid grid = measurement_window(target, window, step);
  const ElementMatrix amplitudes = ElementMatrix::Ones(geom.n_rows, geom.n_cols);

  QuadraticDesign design;
  auto measure = [&](double coefficient) {
    ++design.iterations;
    const PhaseProfile profile =
        quadratic_profile_with_coefficient(geom, incident, target, coefficient);
    const Pattern pattern =
        nrcs_map(geom, profile.phases, amplitudes, incident, grid, options.farfield);
    const PeakResult pk = peak(pattern);
    WidthSample s;
    s.coefficient = coefficient;
    s.peak = pk.direction;
    s.width = half_power_beamwidth(pattern, pk.direction).width_deg;
    const double slack = step * (1.0 + 1e-9);
    s.on_target = std::abs(pk.direction.phi - target.phi) <= slack &&
                  std::abs(pk.direction.theta - target.theta) <= slack;
    return s;
  };

  WidthSample best;
  bool have_best = false;
  auto consider = [&](const WidthSample &s) {
    if (!s.on_target)
      return false;
    if (!have_best || std::abs(s.width - beamwidth_deg) < std::abs(best.width - beamwidth_deg))
    {
      best = s;
      have_best = true;
    }
    return std::abs(s.width - beamwidth_deg) <= options.tolerance_deg;
  };

  auto finish = [&](const WidthSample &s, bool converged) {
    design.profile = quadratic_profile_with_coefficient(geom, incident, target, s.coefficient);
    design.coefficient = s.coefficient;
    design.measured_width_deg = s.width;
    design.measured_peak = s.peak;
    design.converged = converged;
    return design;
  };

  // Geometric spread of a defocused aperture: beamwidth ~ D / F.
  const double initial = geom.wavenumber() * (beamwidth_deg * deg) / (2.0 * geom.aperture_width());
  const double scan_step = initial / 8.0;

  // Bracket the first crossing of the requested width with a coarse scan;
  // the width is not monotone far beyond it.
  WidthSample lo = measure(0.0);
  if (consider(lo) || lo.width >= beamwidth_deg)
    return finish(lo, std::abs(lo.width - beamwidth_deg) <= options.tolerance_deg && lo.on_target);
  WidthSample hi;
  bool bracketed = false;
  for (int j = 1; design.iterations < options.max_iterations && j <= 64; ++j)
  {
    hi = measure(j * scan_step);
    if (consider(hi))
      return finish(hi, true);
    if (hi.width >= beamwidth_deg)
    {
      bracketed = true;
      break;
    }
    lo = hi;
  }

  while (bracketed && design.iterations < options.max_iterations)
  {
    const WidthSample mid = measure(0.5 * (lo.coefficient + hi.coefficient));
    if (consider(mid))
      return finish(mid, true);
    (mid.width < beamwidth_deg ? lo : hi) = mid;
  }
  return finish(have_best ? best : lo, false);
}

std::pair<PhaseProfile, FeasibilityReport> wrap_to_range(const PhaseProfile &profile,
                                                         double available)
{
  if (!(available >= 0.0))
    throw std::invalid_argument("available phase range must be non-negative");
  PhaseProfile out{profile.phases.unaryExpr(&wrap_phase), true};

  FeasibilityReport report;
  report.available_phase = available;
  report.max_required_phase = out.phases.size() ? out.phases.maxCoeff() : 0.0;
  if (available >= two_pi)
    return {std::move(out), report};

  Eigen::Index clipped = 0;
  for (Eigen::Index i = 0; i < out.phases.size(); ++i)
  {
    double &value = out.phases.data()[i];
    if (value > available)
    {
      value = available;
      ++clipped;
    }
  }
  report.clipped_fraction =
      out.phases.size() ? static_cast<double>(clipped) / static_cast<double>(out.phases.size())
                        : 0.0;
  report.feasible = clipped == 0;
  return {std::move(out), report};
}

PhaseProfile quantize(const PhaseProfile &profile, int bits)
{
  if (bits < 1 || bits > 30)
    throw std::invalid_argument("quantization needs between 1 and 30 bits");
  if (!profile.wrapped)
    throw std::invalid_argument("quantization needs a wrapped profile");
  const long levels = 1L << bits;
  const double step = two_pi / static_cast<double>(levels);
  auto snap = [&](double phase) {
    const double index = phase / step;
    auto lower = static_cast<long>(std::floor(index));
    if (index - static_cast<double>(lower) > 0.5)
      ++lower;
    return static_cast<double>(lower % levels) * step;
  };
  return {profile.phases.unaryExpr(snap), true};
}

VoltageMap temperature_aware_voltages(const PhaseProfile &profile, const UnitCellDesign &design,
                                      const LcMixture &mix, double temperature,
                                      double frequency_ghz, const TemperatureModel &tmodel,
                                      Execution exec)
{
  const double available = max_phase_shift(design, mix, temperature, frequency_ghz, tmodel);
  auto [wrapped, report] = wrap_to_range(profile, available);

  VoltageMap out;
  out.report = report;
  out.voltages.resize(wrapped.phases.rows(), wrapped.phases.cols());
  const Eigen::Index n = wrapped.phases.size();
  const double *target = wrapped.phases.data();
  double *volts = out.voltages.data();
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (Eigen::Index i = 0; i < n; ++i)
    volts[i] =
        voltage_for_phase(design, mix, temperature, frequency_ghz, tmodel, target[i]);
  return out;
}

ElementMatrix realized_phases(const ElementMatrix &voltages, const UnitCellDesign &design,
                              const LcMixture &mix, double temperature, double frequency_ghz,
                              const TemperatureModel &tmodel, Execution exec)
{
  ElementMatrix out(voltages.rows(), voltages.cols());
  const Eigen::Index n = voltages.size();
  const double *v = voltages.data();
  double *phase = out.data();
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (Eigen::Index i = 0; i < n; ++i)
    phase[i] = phase_shift(design, mix, v[i], temperature, frequency_ghz, tmodel);
  return out;
}

} // namespace lcris
