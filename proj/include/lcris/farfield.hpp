// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lcris/types.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lcris
{

/// Centered rectangular lattice. Rows run along x, columns along y.
struct ArrayGeometry
{
  int n_rows = 1;
  int n_cols = 1;
  double spacing_wavelengths = 0.5;
  double wavelength = 1.0; // meters

  double spacing() const { return spacing_wavelengths * wavelength; }
  double wavenumber() const;
  double x(int row) const { return (row - 0.5 * (n_rows - 1)) * spacing(); }
  double y(int col) const { return (col - 0.5 * (n_cols - 1)) * spacing(); }
  /// Element count times spacing along the row axis.
  double aperture_width() const { return n_rows * spacing(); }
};

void validate(const ArrayGeometry &geom);

/// Azimuth/elevation in degrees. Direction cosines u = cos(theta) sin(phi),
/// v = sin(theta), w = cos(theta) cos(phi).
struct Direction
{
  double phi = 0.0;
  double theta = 0.0;

  double u() const;
  double v() const;
  double w() const;

  static Direction from_cosines(double u, double v);
};

/// Throws std::invalid_argument unless the direction lies in the front
/// hemisphere (|phi|, |theta| <= 90 deg).
void validate(const Direction &dir);

/// Great-circle angle between two directions, in degrees.
double angular_distance_deg(const Direction &a, const Direction &b);

/// Angular sampling of a pattern.
///
/// `phi_theta` is a regular raster in degrees (rows = theta, columns = phi).
/// `uv_raster` samples the DFT raster of the aperture exactly: column c and
/// row r sit at u + u_in = (c - P/2) / (P s), v + v_in = (r - Q/2) / (Q s),
/// with s the spacing in wavelengths; points outside the unit disk are
/// invalid.
struct AngularGrid
{
  enum class Kind
  {
    phi_theta,
    uv_raster,
  };

  Kind kind = Kind::phi_theta;
  double phi_min = -90.0;
  double phi_max = 90.0;
  double phi_step = 1.0;
  double theta_min = -90.0;
  double theta_max = 90.0;
  double theta_step = 1.0;
  int raster_u = 0;
  int raster_v = 0;

  static AngularGrid phi_theta(double phi_min, double phi_max, double phi_step, double theta_min,
                               double theta_max, double theta_step);
  static AngularGrid uv(int raster_u, int raster_v);

  int rows() const;
  int cols() const;
  double phi_at(int col) const { return phi_min + col * phi_step; }
  double theta_at(int row) const { return theta_min + row * theta_step; }
};

void validate(const AngularGrid &grid);

/// NRCS sampled on a grid. Values are linear, indexed row-major (row = theta
/// or v, column = phi or u); invalid points hold 0.
struct Pattern
{
  AngularGrid grid;
  Direction incident;
  double timestamp = 0.0;
  std::vector<Direction> directions;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  int rows() const { return grid.rows(); }
  int cols() const { return grid.cols(); }
  std::size_t index(int row, int col) const
  {
    return static_cast<std::size_t>(row) * cols() + col;
  }
  double at(int row, int col) const { return values[index(row, col)]; }
  bool is_valid(int row, int col) const { return valid[index(row, col)] != 0; }

  /// Grid point nearest to `dir` (phi_theta grids only).
  std::pair<int, int> nearest(const Direction &dir) const;
  double value_near(const Direction &dir) const;
};

enum class FarFieldMethod
{
  direct,
  fft,
};

struct FarFieldOptions
{
  FarFieldMethod method = FarFieldMethod::fft;
  Execution execution = Execution::parallel;
  /// Zero-padded raster size used by the FFT path on phi_theta grids.
  int fft_size = 1024;
};

class VisibilityError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Normalized radar cross section toward `out` for an incident wave from
/// `incident`, by direct summation over elements.
double nrcs(const ArrayGeometry &geom, const ElementMatrix &phases,
            const ElementMatrix &amplitudes, const Direction &incident, const Direction &out);

Pattern nrcs_map(const ArrayGeometry &geom, const ElementMatrix &phases,
                 const ElementMatrix &amplitudes, const Direction &incident,
                 const AngularGrid &grid, const FarFieldOptions &options = {});

/// Normalized |AF|^2 on the full P x Q DFT raster (rows follow u + u_in,
/// columns v + v_in, both starting at zero), without visibility masking.
ElementMatrix nrcs_raster(const ArrayGeometry &geom, const ElementMatrix &phases,
                          const ElementMatrix &amplitudes, int raster_u, int raster_v);

struct PeakResult
{
  Direction direction;
  double value = 0.0;
  int row = 0;
  int col = 0;
};

/// Maximum over valid points; exact ties go to the smallest
/// (|theta|, |phi|, theta, phi).
PeakResult peak(const Pattern &pattern);

struct BeamwidthResult
{
  double width_deg = 0.0;
  double phi_cut_deg = 0.0;
  double theta_cut_deg = 0.0;
  bool truncated = false;
};

/// Mean of the half-power widths along the phi and theta cuts through
/// `peak_dir`, with linear interpolation of the crossings. Widths are in grid
/// degrees. Requires a phi_theta grid and a positive peak.
BeamwidthResult half_power_beamwidth(const Pattern &pattern, const Direction &peak_dir);

/// 10 log10(value) floored at -60 dB.
double to_db(double value);

} // namespace lcris
