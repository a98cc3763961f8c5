// SPDX-License-Identifier: Apache-2.0

#include "lcris/farfield.hpp"

#include "farfield_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <tuple>

namespace lcris
{

namespace
{

constexpr double deg = std::numbers::pi / 180.0;

int steps_in(double lo, double hi, double step)
{
  // Tolerate ranges like [-90, 90] / 0.1 that are not bit-exact multiples.
  return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

} // namespace

double ArrayGeometry::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

void validate(const ArrayGeometry &geom)
{
  if (geom.n_rows < 1 || geom.n_cols < 1)
    throw std::invalid_argument("array must have at least one row and one column");
  if (!(geom.spacing_wavelengths > 0.0))
    throw std::invalid_argument("element spacing must be positive");
  if (!(geom.wavelength > 0.0))
    throw std::invalid_argument("wavelength must be positive");
}

double Direction::u() const { return std::cos(theta * deg) * std::sin(phi * deg); }
double Direction::v() const { return std::sin(theta * deg); }
double Direction::w() const { return std::cos(theta * deg) * std::cos(phi * deg); }

Direction Direction::from_cosines(double u, double v)
{
  const double w = std::sqrt(std::max(0.0, 1.0 - u * u - v * v));
  return {std::atan2(u, w) / deg, std::asin(std::clamp(v, -1.0, 1.0)) / deg};
}

void validate(const Direction &dir)
{
  if (!(std::abs(dir.phi) <= 90.0) || !(std::abs(dir.theta) <= 90.0))
    throw std::invalid_argument("direction (" + std::to_string(dir.phi) + ", " +
                                std::to_string(dir.theta) +
                                ") deg is outside the front hemisphere");
}

double angular_distance_deg(const Direction &a, const Direction &b)
{
  const double dot = a.u() * b.u() + a.v() * b.v() + a.w() * b.w();
  return std::acos(std::clamp(dot, -1.0, 1.0)) / deg;
}

AngularGrid AngularGrid::phi_theta(double phi_min, double phi_max, double phi_step,
                                   double theta_min, double theta_max, double theta_step)
{
  AngularGrid g;
  g.kind = Kind::phi_theta;
  g.phi_min = phi_min;
  g.phi_max = phi_max;
  g.phi_step = phi_step;
  g.theta_min = theta_min;
  g.theta_max = theta_max;
  g.theta_step = theta_step;
  return g;
}

AngularGrid AngularGrid::uv(int raster_u, int raster_v)
{
  AngularGrid g;
  g.kind = Kind::uv_raster;
  g.raster_u = raster_u;
  g.raster_v = raster_v;
  return g;
}

int AngularGrid::rows() const
{
  return kind == Kind::phi_theta ? steps_in(theta_min, theta_max, theta_step) : raster_v;
}

int AngularGrid::cols() const
{
  return kind == Kind::phi_theta ? steps_in(phi_min, phi_max, phi_step) : raster_u;
}

void validate(const AngularGrid &grid)
{
  if (grid.kind == AngularGrid::Kind::uv_raster)
  {
    if (grid.raster_u < 1 || grid.raster_v < 1)
      throw std::invalid_argument("uv raster needs positive dimensions");
    return;
  }
  if (!(grid.phi_step > 0.0) || !(grid.theta_step > 0.0))
    throw std::invalid_argument("grid steps must be positive");
  if (!(grid.phi_min <= grid.phi_max) || !(grid.theta_min <= grid.theta_max))
    throw std::invalid_argument("grid bounds must be ordered");
  if (grid.phi_min < -90.0 || grid.phi_max > 90.0 || grid.theta_min < -90.0 ||
      grid.theta_max > 90.0)
    throw std::invalid_argument("grid must stay within [-90, 90] deg in phi and theta");
}

std::pair<int, int> Pattern::nearest(const Direction &dir) const
{
  if (grid.kind != AngularGrid::Kind::phi_theta)
    throw std::invalid_argument("nearest-point lookup needs a phi/theta grid");
  const int col = static_cast<int>(std::lround((dir.phi - grid.phi_min) / grid.phi_step));
  const int row = static_cast<int>(std::lround((dir.theta - grid.theta_min) / grid.theta_step));
  return {std::clamp(row, 0, rows() - 1), std::clamp(col, 0, cols() - 1)};
}

double Pattern::value_near(const Direction &dir) const
{
  const auto [row, col] = nearest(dir);
  return at(row, col);
}

double nrcs(const ArrayGeometry &geom, const ElementMatrix &phases,
            const ElementMatrix &amplitudes, const Direction &incident, const Direction &out)
{
  detail::check_inputs(geom, phases, amplitudes);
  validate(incident);
  const double u = out.u();
  const double v = out.v();
  if (u * u + v * v > 1.0 + 1e-12 || std::abs(out.phi) > 90.0 || std::abs(out.theta) > 90.0)
    throw VisibilityError("observation direction outside the visible region");
  return std::min(1.0, detail::direct_point(geom, phases, amplitudes, u + incident.u(),
                                            v + incident.v()));
}

Pattern nrcs_map(const ArrayGeometry &geom, const ElementMatrix &phases,
                 const ElementMatrix &amplitudes, const Direction &incident,
                 const AngularGrid &grid, const FarFieldOptions &options)
{
  detail::check_inputs(geom, phases, amplitudes);
  validate(incident);
  validate(grid);

  Pattern pattern = detail::empty_pattern(geom, incident, grid);
  if (options.method == FarFieldMethod::direct)
    detail::fill_direct(geom, phases, amplitudes, pattern, options.execution);
  else
    detail::fill_fft(geom, phases, amplitudes, pattern, options);
  for (auto &value : pattern.values)
    value = std::min(value, 1.0);
  return pattern;
}

PeakResult peak(const Pattern &pattern)
{
  PeakResult best;
  bool found = false;
  auto key = [](const Direction &d) {
    return std::make_tuple(std::abs(d.theta), std::abs(d.phi), d.theta, d.phi);
  };
  for (int r = 0; r < pattern.rows(); ++r)
  {
    for (int c = 0; c < pattern.cols(); ++c)
    {
      if (!pattern.is_valid(r, c))
        continue;
      const double value = pattern.at(r, c);
      const Direction &dir = pattern.directions[pattern.index(r, c)];
      if (!found || value > best.value || (value == best.value && key(dir) < key(best.direction)))
      {
        best = {dir, value, r, c};
        found = true;
      }
    }
  }
  return best;
}

namespace
{

struct CutSide
{
  double extent = 0.0;
  bool truncated = false;
};

// Walks from `start` in direction `step_sign` until the value drops below
// `half`; returns the distance in samples to the interpolated crossing.
template <typename Sample>
CutSide walk(Sample sample, int start, int count, int step_sign, double half)
{
  int i = start;
  while (true)
  {
    const int next = i + step_sign;
    if (next < 0 || next >= count)
      return {static_cast<double>(std::abs(i - start)), true};
    const auto [value_next, valid_next] = sample(next);
    if (!valid_next)
      return {static_cast<double>(std::abs(i - start)), true};
    if (value_next < half)
    {
      const double value_here = sample(i).first;
      const double frac = (value_here - half) / (value_here - value_next);
      return {std::abs(i - start) + frac, false};
    }
    i = next;
  }
}

} // namespace

BeamwidthResult half_power_beamwidth(const Pattern &pattern, const Direction &peak_dir)
{
  if (pattern.grid.kind != AngularGrid::Kind::phi_theta)
    throw std::invalid_argument("beamwidth measurement needs a phi/theta grid");
  const auto [row, col] = pattern.nearest(peak_dir);
  const double peak_value = pattern.at(row, col);
  if (!(peak_value > 0.0))
    throw std::domain_error("beamwidth undefined for a zero peak");
  const double half = 0.5 * peak_value;

  auto along_phi = [&](int c) {
    return std::make_pair(pattern.at(row, c), pattern.is_valid(row, c));
  };
  auto along_theta = [&](int r) {
    return std::make_pair(pattern.at(r, col), pattern.is_valid(r, col));
  };

  const CutSide phi_lo = walk(along_phi, col, pattern.cols(), -1, half);
  const CutSide phi_hi = walk(along_phi, col, pattern.cols(), +1, half);
  const CutSide th_lo = walk(along_theta, row, pattern.rows(), -1, half);
  const CutSide th_hi = walk(along_theta, row, pattern.rows(), +1, half);

  BeamwidthResult out;
  out.phi_cut_deg = (phi_lo.extent + phi_hi.extent) * pattern.grid.phi_step;
  out.theta_cut_deg = (th_lo.extent + th_hi.extent) * pattern.grid.theta_step;
  out.width_deg = 0.5 * (out.phi_cut_deg + out.theta_cut_deg);
  out.truncated = phi_lo.truncated || phi_hi.truncated || th_lo.truncated || th_hi.truncated;
  return out;
}

double to_db(double value) { return value <= 1e-6 ? -60.0 : 10.0 * std::log10(value); }

} // namespace lcris
