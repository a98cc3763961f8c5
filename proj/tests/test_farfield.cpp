// SPDX-License-Identifier: Apache-2.0

#include "lcris/design.hpp"
#include "lcris/farfield.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace lcris;

namespace
{

ArrayGeometry square(int n)
{
  ArrayGeometry g;
  g.n_rows = n;
  g.n_cols = n;
  g.spacing_wavelengths = 0.5;
  g.wavelength = 1.0;
  return g;
}

ElementMatrix random_phases(std::mt19937_64 &rng, int r, int c)
{
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  ElementMatrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m.data()[i] = d(rng);
  return m;
}

std::vector<double> flat(const ElementMatrix &m) { return {m.data(), m.data() + m.size()}; }

const FarFieldOptions direct{FarFieldMethod::direct, Execution::parallel, 1024};

} // namespace

TEST_CASE("specular reflection of a uniform surface has unit NRCS")
{
  const ArrayGeometry g = square(100);
  const ElementMatrix z = ElementMatrix::Zero(100, 100), one = ElementMatrix::Ones(100, 100);
  CHECK(nrcs(g, z, one, {}, {}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nrcs(g, z, ElementMatrix::Zero(100, 100), {}, {}) == 0.0);
  CHECK(nrcs(g, z, ElementMatrix::Constant(100, 100, 0.5), {}, {}) == doctest::Approx(0.25).epsilon(1e-12));
  const Pattern p = nrcs_map(g, z, one, {}, AngularGrid::phi_theta(-90, 90, 1, -90, 90, 1));
  const PeakResult pk = peak(p);
  CHECK(pk.direction.phi == 0.0);
  CHECK(pk.direction.theta == 0.0);
  CHECK(pk.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("direct sum matches the complex-exponential oracle")
{
  std::mt19937_64 rng(21);
  const ArrayGeometry g = square(7);
  const ElementMatrix psi = random_phases(rng, 7, 7);
  std::uniform_real_distribution<double> a(0.0, 1.0);
  ElementMatrix amp(7, 7);
  for (Eigen::Index i = 0; i < amp.size(); ++i)
    amp.data()[i] = a(rng);
  const Direction inc{10.0, -5.0};
  for (Direction out : {Direction{0, 0}, Direction{33, 12}, Direction{-70, 40}})
  {
    const double ref = oracle::array_factor(7, 7, 0.5, flat(psi), flat(amp), out.u() + inc.u(), out.v() + inc.v());
    CHECK(nrcs(g, psi, amp, inc, out) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("single element gives a flat pattern")
{
  const ArrayGeometry g = square(1);
  const Pattern p = nrcs_map(g, ElementMatrix::Constant(1, 1, 0.3), ElementMatrix::Constant(1, 1, 0.8), {},
                             AngularGrid::phi_theta(-90, 90, 5, -90, 90, 5), direct);
  for (std::size_t i = 0; i < p.values.size(); ++i)
    if (p.valid[i])
      CHECK(p.values[i] == doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("first sidelobe of a uniform aperture sits near -13.26 dB")
{
  const ArrayGeometry g = square(100);
  const ElementMatrix z = ElementMatrix::Zero(100, 100), one = ElementMatrix::Ones(100, 100);
  const Pattern p = nrcs_map(g, z, one, {}, AngularGrid::phi_theta(0, 5, 0.005, 0, 0, 1), direct);
  double lobe = 0.0;
  bool past_null = false;
  for (int c = 1; c < p.cols(); ++c)
  {
    const double prev = p.at(0, c - 1), here = p.at(0, c);
    if (!past_null && here > prev)
      past_null = true;
    if (past_null)
      lobe = std::max(lobe, here);
    if (past_null && here < prev)
      break;
  }
  CHECK(to_db(lobe) == doctest::Approx(-13.2585).epsilon(2e-3));
}

TEST_CASE("broadside half-power width of a 50 wavelength aperture")
{
  const ArrayGeometry g = square(100);
  const Pattern p = nrcs_map(g, ElementMatrix::Zero(100, 100), ElementMatrix::Ones(100, 100), {},
                             AngularGrid::phi_theta(-3, 3, 0.01, -3, 3, 0.01), direct);
  const BeamwidthResult bw = half_power_beamwidth(p, peak(p).direction);
  CHECK(bw.width_deg == doctest::Approx(1.0152372).epsilon(1e-4));
  CHECK(std::abs(bw.width_deg - diffraction_limited_width_deg(g)) < 0.1);
  CHECK_FALSE(bw.truncated);
}

TEST_CASE("FFT and direct paths agree on the DFT raster")
{
  std::mt19937_64 rng(23);
  const ArrayGeometry g = square(16);
  for (int trial = 0; trial < 5; ++trial)
  {
    const ElementMatrix psi = random_phases(rng, 16, 16);
    const ElementMatrix one = ElementMatrix::Ones(16, 16);
    const Pattern fft = nrcs_map(g, psi, one, {}, AngularGrid::uv(64, 64), {FarFieldMethod::fft, Execution::parallel, 64});
    const Pattern dir = nrcs_map(g, psi, one, {}, AngularGrid::uv(64, 64), direct);
    double worst = 0.0;
    for (std::size_t i = 0; i < fft.values.size(); ++i)
      if (fft.valid[i])
        worst = std::max(worst, std::abs(fft.values[i] - dir.values[i]) / std::max(dir.values[i], 1e-300));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("FFT path tracks the direct path on an angular grid")
{
  std::mt19937_64 rng(29);
  const ArrayGeometry g = square(16);
  const ElementMatrix psi = random_phases(rng, 16, 16);
  const ElementMatrix one = ElementMatrix::Ones(16, 16);
  const AngularGrid grid = AngularGrid::phi_theta(-80, 80, 2, -80, 80, 2);
  const Pattern fft = nrcs_map(g, psi, one, {}, grid, {FarFieldMethod::fft, Execution::parallel, 1024});
  const Pattern dir = nrcs_map(g, psi, one, {}, grid, direct);
  double worst = 0.0;
  for (std::size_t i = 0; i < fft.values.size(); ++i)
    worst = std::max(worst, std::abs(fft.values[i] - dir.values[i]));
  CHECK(worst < 2e-3 * peak(dir).value);
}

TEST_CASE("raster mean equals the amplitude energy")
{
  std::mt19937_64 rng(31);
  const ArrayGeometry g = square(12);
  const ElementMatrix psi = random_phases(rng, 12, 12);
  std::uniform_real_distribution<double> a(0.0, 1.0);
  ElementMatrix amp(12, 12);
  for (Eigen::Index i = 0; i < amp.size(); ++i)
    amp.data()[i] = a(rng);
  const ElementMatrix r = nrcs_raster(g, psi, amp, 48, 40);
  const double expected = amp.square().sum() / (144.0 * 144.0);
  CHECK(r.mean() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("global phase offsets leave the pattern unchanged")
{
  std::mt19937_64 rng(37);
  const ArrayGeometry g = square(10);
  const ElementMatrix psi = random_phases(rng, 10, 10);
  const AngularGrid grid = AngularGrid::phi_theta(-60, 60, 3, -60, 60, 3);
  const Pattern a = nrcs_map(g, psi, ElementMatrix::Ones(10, 10), {}, grid, direct);
  const Pattern b = nrcs_map(g, psi + 1.234, ElementMatrix::Ones(10, 10), {}, grid, direct);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-12);
}

TEST_CASE("NRCS never exceeds the squared mean amplitude")
{
  std::mt19937_64 rng(41);
  const ArrayGeometry g = square(9);
  const ElementMatrix psi = random_phases(rng, 9, 9);
  const ElementMatrix amp = ElementMatrix::Constant(9, 9, 0.7);
  const Pattern p = nrcs_map(g, psi, amp, {}, AngularGrid::phi_theta(-90, 90, 2, -90, 90, 2), direct);
  for (double v : p.values)
    CHECK(v <= 0.49 + 1e-12);
}

TEST_CASE("steering puts the peak on target for random directions")
{
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ang(-55.0, 55.0);
  const ArrayGeometry g = square(32);
  const AngularGrid grid = AngularGrid::phi_theta(-89, 89, 1, -89, 89, 1);
  for (int i = 0; i < 20; ++i)
  {
    const Direction t{std::round(ang(rng)), std::round(ang(rng))};
    const Pattern p = nrcs_map(g, steering_profile(g, {}, t).phases, ElementMatrix::Ones(32, 32), {}, grid);
    const Direction pk = peak(p).direction;
    CHECK(std::abs(pk.phi - t.phi) <= 1.0);
    CHECK(std::abs(pk.theta - t.theta) <= 1.0);
  }
}

TEST_CASE("steering is reciprocal up to a global phase")
{
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> ang(-60.0, 60.0);
  const ArrayGeometry g = square(8);
  for (int i = 0; i < 10; ++i)
  {
    const Direction a{ang(rng), ang(rng)}, b{ang(rng), ang(rng)};
    const ElementMatrix d = steering_profile(g, a, b).phases - steering_profile(g, b, a).phases;
    CHECK(d.maxCoeff() - d.minCoeff() <= 1e-12);
  }
}

TEST_CASE("peak tie-break and degenerate patterns")
{
  const ArrayGeometry g = square(2);
  const Pattern p = nrcs_map(g, ElementMatrix::Zero(2, 2), ElementMatrix::Zero(2, 2), {},
                             AngularGrid::phi_theta(-10, 10, 5, -10, 10, 5), direct);
  const PeakResult pk = peak(p);
  CHECK(pk.value == 0.0);
  CHECK(pk.direction.phi == 0.0);
  CHECK(pk.direction.theta == 0.0);

  Pattern q = p;
  q.values.assign(q.values.size(), 0.0);
  q.values[q.index(0, 0)] = 0.5; // (-10, -10)
  q.values[q.index(4, 4)] = 0.5; // (10, 10)
  q.values[q.index(2, 4)] = 0.5; // (10, 0)
  q.values[q.index(2, 0)] = 0.5; // (-10, 0)
  const PeakResult t = peak(q);
  CHECK(t.direction.theta == 0.0);
  CHECK(t.direction.phi == -10.0);
}

TEST_CASE("beams at the edge of the grid are flagged as truncated")
{
  const ArrayGeometry g = square(100);
  const Pattern p = nrcs_map(g, ElementMatrix::Zero(100, 100), ElementMatrix::Ones(100, 100), {},
                             AngularGrid::phi_theta(0, 3, 0.05, 0, 3, 0.05), direct);
  CHECK(half_power_beamwidth(p, peak(p).direction).truncated);
}

TEST_CASE("invalid inputs")
{
  const ArrayGeometry g = square(4);
  CHECK_THROWS_AS(nrcs(g, ElementMatrix::Zero(3, 4), ElementMatrix::Ones(3, 4), {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(nrcs(g, ElementMatrix::Zero(4, 4), ElementMatrix::Constant(4, 4, 1.5), {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(nrcs(g, ElementMatrix::Zero(4, 4), ElementMatrix::Ones(4, 4), {}, {120, 0}), std::exception);
  CHECK_THROWS_AS(validate(AngularGrid::phi_theta(10, -10, 1, 0, 0, 1)), std::invalid_argument);
  CHECK(to_db(0.0) == -60.0);
  CHECK(to_db(1.0) == 0.0);
}

TEST_CASE("points outside the visible disk are invalid on a uv raster")
{
  const ArrayGeometry g = square(4);
  const Pattern p = nrcs_map(g, ElementMatrix::Zero(4, 4), ElementMatrix::Ones(4, 4), {}, AngularGrid::uv(16, 16));
  std::size_t invalid = 0;
  for (auto v : p.valid)
    invalid += v == 0;
  CHECK(invalid > 0);
  CHECK(invalid < p.valid.size());
}
