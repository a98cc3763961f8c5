// SPDX-License-Identifier: Apache-2.0

#include "farfield_kernels.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace lcris::detail
{

using cplx = std::complex<double>;

namespace
{

std::vector<cplx> element_weights(const ElementMatrix &phases, const ElementMatrix &amplitudes)
{
  std::vector<cplx> w(static_cast<std::size_t>(phases.size()));
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    w[i] = std::polar(amplitudes.data()[i], phases.data()[i]);
  return w;
}

double normalization(const ArrayGeometry &geom)
{
  const double count = static_cast<double>(geom.n_rows) * geom.n_cols;
  return 1.0 / (count * count);
}

// Raster coordinate of summed cosine `s` on an n-point DFT axis.
double raster_coordinate(double s, double spacing_wavelengths, int n)
{
  double f = s * spacing_wavelengths * n;
  f -= n * std::floor(f / n);
  const double nearest = std::round(f);
  if (std::abs(f - nearest) < 1e-9)
    f = nearest;
  if (f >= n)
    f -= n;
  return f;
}

struct FftwFree
{
  void operator()(fftw_complex *p) const { fftw_free(p); }
};

struct FftwPlanDestroy
{
  void operator()(fftw_plan_s *p) const { fftw_destroy_plan(p); }
};

std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

// P x Q raster of normalized |AF|^2; row p <-> U = p / (P s), column q <-> V = q / (Q s).
std::vector<double> power_raster(const ArrayGeometry &geom, const ElementMatrix &phases,
                                 const ElementMatrix &amplitudes, int P, int Q)
{
  if (P < geom.n_rows || Q < geom.n_cols)
    throw std::invalid_argument("FFT raster " + std::to_string(P) + "x" + std::to_string(Q) +
                                " is smaller than the array");
  const std::size_t total = static_cast<std::size_t>(P) * Q;
  std::unique_ptr<fftw_complex, FftwFree> buffer(fftw_alloc_complex(total));
  if (!buffer)
    throw std::bad_alloc();
  fftw_complex *data = buffer.get();

  std::unique_ptr<fftw_plan_s, FftwPlanDestroy> plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan.reset(fftw_plan_dft_2d(P, Q, data, data, FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  if (!plan)
    throw std::runtime_error("FFTW planning failed");

  std::fill_n(&data[0][0], 2 * total, 0.0);
  for (int n = 0; n < geom.n_rows; ++n)
  {
    for (int m = 0; m < geom.n_cols; ++m)
    {
      const cplx w = std::polar(amplitudes(n, m), phases(n, m));
      const std::size_t idx = static_cast<std::size_t>(n) * Q + m;
      data[idx][0] = w.real();
      data[idx][1] = w.imag();
    }
  }
  fftw_execute(plan.get());

  const double norm = normalization(geom);
  std::vector<double> power(total);
  for (std::size_t i = 0; i < total; ++i)
    power[i] = (data[i][0] * data[i][0] + data[i][1] * data[i][1]) * norm;
  return power;
}

} // namespace

void check_inputs(const ArrayGeometry &geom, const ElementMatrix &phases,
                  const ElementMatrix &amplitudes)
{
  validate(geom);
  auto check = [&](const ElementMatrix &m, const char *what) {
    if (m.rows() != geom.n_rows || m.cols() != geom.n_cols)
      throw std::invalid_argument(std::string(what) + " matrix is " + std::to_string(m.rows()) +
                                  "x" + std::to_string(m.cols()) + ", geometry is " +
                                  std::to_string(geom.n_rows) + "x" +
                                  std::to_string(geom.n_cols));
  };
  check(phases, "phase");
  check(amplitudes, "amplitude");
  if ((amplitudes < 0.0).any() || (amplitudes > 1.0).any())
    throw std::invalid_argument("amplitudes must lie in [0, 1]");
}

Pattern empty_pattern(const ArrayGeometry &geom, const Direction &incident,
                      const AngularGrid &grid)
{
  Pattern p;
  p.grid = grid;
  p.incident = incident;
  const std::size_t total = static_cast<std::size_t>(grid.rows()) * grid.cols();
  p.directions.resize(total);
  p.values.assign(total, 0.0);
  p.valid.assign(total, 1);

  if (grid.kind == AngularGrid::Kind::phi_theta)
  {
    for (int r = 0; r < grid.rows(); ++r)
      for (int c = 0; c < grid.cols(); ++c)
        p.directions[p.index(r, c)] = {grid.phi_at(c), grid.theta_at(r)};
    return p;
  }

  const double s = geom.spacing_wavelengths;
  for (int r = 0; r < grid.raster_v; ++r)
  {
    const double v = (r - 0.5 * grid.raster_v) / (grid.raster_v * s) - incident.v();
    for (int c = 0; c < grid.raster_u; ++c)
    {
      const double u = (c - 0.5 * grid.raster_u) / (grid.raster_u * s) - incident.u();
      const std::size_t idx = p.index(r, c);
      if (u * u + v * v > 1.0)
      {
        p.valid[idx] = 0;
        continue;
      }
      p.directions[idx] = Direction::from_cosines(u, v);
    }
  }
  return p;
}

double direct_point(const ArrayGeometry &geom, const ElementMatrix &phases,
                    const ElementMatrix &amplitudes, double su, double sv)
{
  const double k = geom.wavenumber();
  cplx sum = 0.0;
  for (int n = 0; n < geom.n_rows; ++n)
  {
    const double xu = geom.x(n) * su;
    for (int m = 0; m < geom.n_cols; ++m)
      sum += std::polar(amplitudes(n, m), phases(n, m) + k * (xu + geom.y(m) * sv));
  }
  return std::norm(sum) * normalization(geom);
}

namespace
{

// Summed cosines of sample (r, c).
std::pair<double, double> summed_cosines(const Pattern &p, const ArrayGeometry &geom, int r,
                                         int c)
{
  if (p.grid.kind == AngularGrid::Kind::uv_raster)
  {
    const double s = geom.spacing_wavelengths;
    return {(c - 0.5 * p.grid.raster_u) / (p.grid.raster_u * s),
            (r - 0.5 * p.grid.raster_v) / (p.grid.raster_v * s)};
  }
  const Direction &d = p.directions[p.index(r, c)];
  return {d.u() + p.incident.u(), d.v() + p.incident.v()};
}

void fill_direct_serial(const ArrayGeometry &geom, const ElementMatrix &phases,
                        const ElementMatrix &amplitudes, Pattern &p)
{
  for (int r = 0; r < p.rows(); ++r)
  {
    for (int c = 0; c < p.cols(); ++c)
    {
      if (!p.is_valid(r, c))
        continue;
      const auto [su, sv] = summed_cosines(p, geom, r, c);
      p.values[p.index(r, c)] = direct_point(geom, phases, amplitudes, su, sv);
    }
  }
}

void fill_direct_parallel(const ArrayGeometry &geom, const ElementMatrix &phases,
                          const ElementMatrix &amplitudes, Pattern &p)
{
  const std::vector<cplx> w = element_weights(phases, amplitudes);
  const double k = geom.wavenumber();
  const double norm = normalization(geom);
  const int N = geom.n_rows;
  const int M = geom.n_cols;

#pragma omp parallel
  {
    std::vector<cplx> row_sum(N);
    std::vector<cplx> ey(M);
#pragma omp for schedule(dynamic)
    for (int r = 0; r < p.rows(); ++r)
    {
      // Every sample of a grid row shares the same summed v cosine.
      int first_valid = -1;
      for (int c = 0; c < p.cols() && first_valid < 0; ++c)
        if (p.is_valid(r, c))
          first_valid = c;
      if (first_valid < 0)
        continue;
      const double sv = summed_cosines(p, geom, r, first_valid).second;
      for (int m = 0; m < M; ++m)
        ey[m] = std::polar(1.0, k * geom.y(m) * sv);
      for (int n = 0; n < N; ++n)
      {
        cplx acc = 0.0;
        const cplx *wn = &w[static_cast<std::size_t>(n) * M];
        for (int m = 0; m < M; ++m)
          acc += wn[m] * ey[m];
        row_sum[n] = acc;
      }
      for (int c = 0; c < p.cols(); ++c)
      {
        if (!p.is_valid(r, c))
          continue;
        const double su = summed_cosines(p, geom, r, c).first;
        cplx acc = 0.0;
        for (int n = 0; n < N; ++n)
          acc += row_sum[n] * std::polar(1.0, k * geom.x(n) * su);
        p.values[p.index(r, c)] = std::norm(acc) * norm;
      }
    }
  }
}

} // namespace

void fill_direct(const ArrayGeometry &geom, const ElementMatrix &phases,
                 const ElementMatrix &amplitudes, Pattern &pattern, Execution exec)
{
  if (exec == Execution::serial)
    fill_direct_serial(geom, phases, amplitudes, pattern);
  else
    fill_direct_parallel(geom, phases, amplitudes, pattern);
}

void fill_fft(const ArrayGeometry &geom, const ElementMatrix &phases,
              const ElementMatrix &amplitudes, Pattern &p, const FarFieldOptions &options)
{
  const bool raster = p.grid.kind == AngularGrid::Kind::uv_raster;
  const int P = raster ? p.grid.raster_u : options.fft_size;
  const int Q = raster ? p.grid.raster_v : options.fft_size;
  const std::vector<double> power = power_raster(geom, phases, amplitudes, P, Q);
  const double s = geom.spacing_wavelengths;

  auto at = [&](int i, int j) { return power[static_cast<std::size_t>(i) * Q + j]; };
  const int rows = p.rows();
  const int cols = p.cols();

#pragma omp parallel for schedule(static) if (options.execution == Execution::parallel)
  for (int r = 0; r < rows; ++r)
  {
    for (int c = 0; c < cols; ++c)
    {
      if (!p.is_valid(r, c))
        continue;
      const auto [su, sv] = summed_cosines(p, geom, r, c);
      const double fu = raster_coordinate(su, s, P);
      const double fv = raster_coordinate(sv, s, Q);
      const int i0 = static_cast<int>(fu);
      const int j0 = static_cast<int>(fv);
      const double tu = fu - i0;
      const double tv = fv - j0;
      const int i1 = (i0 + 1) % P;
      const int j1 = (j0 + 1) % Q;
      double value = (1.0 - tu) * (1.0 - tv) * at(i0, j0);
      if (tu > 0.0)
        value += tu * (1.0 - tv) * at(i1, j0);
      if (tv > 0.0)
        value += (1.0 - tu) * tv * at(i0, j1);
      if (tu > 0.0 && tv > 0.0)
        value += tu * tv * at(i1, j1);
      p.values[p.index(r, c)] = value;
    }
  }
}

} // namespace lcris::detail

namespace lcris
{

ElementMatrix nrcs_raster(const ArrayGeometry &geom, const ElementMatrix &phases,
                          const ElementMatrix &amplitudes, int raster_u, int raster_v)
{
  detail::check_inputs(geom, phases, amplitudes);
  const std::vector<double> power =
      detail::power_raster(geom, phases, amplitudes, raster_u, raster_v);
  ElementMatrix out(raster_u, raster_v);
  std::copy(power.begin(), power.end(), out.data());
  return out;
}

} // namespace lcris
