// SPDX-License-Identifier: Apache-2.0

#include "lcris/unitcell.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace lcris;

namespace
{
const TemperatureModel tmodel;
constexpr double two_pi = 2.0 * std::numbers::pi;
} // namespace

TEST_CASE("full-tunability length for GT7-29001 at 28 GHz")
{
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  CHECK(full_tunability_length(gt7, 20.0, 28.0, tmodel) == doctest::Approx(17.247413020005762).epsilon(1e-12));
  const UnitCellDesign d = default_phased_array();
  CHECK(max_phase_shift(d, gt7, 20.0, 28.0, tmodel) == doctest::Approx(two_pi).epsilon(1e-12));
  CHECK(insertion_loss(d).db == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("phase range and loss of an 18 mm line")
{
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  UnitCellDesign d = default_phased_array();
  d.l_ps = 18.0;
  CHECK(max_phase_shift(d, gt7, 20.0, 28.0, tmodel) == doctest::Approx(6.557350681986206).epsilon(1e-12));
  CHECK(insertion_loss(d).db == doctest::Approx(4.696356485813021).epsilon(1e-12));
}

TEST_CASE("insertion loss scales linearly with line length")
{
  UnitCellDesign d = default_phased_array();
  const double anchor = d.l_ps;
  const double expected[] = {2.25, 4.5, 9.0};
  const double factors[] = {0.5, 1.0, 2.0};
  for (int i = 0; i < 3; ++i)
  {
    d.l_ps = factors[i] * anchor;
    CHECK(insertion_loss(d).db == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK_FALSE(insertion_loss(d).warning);
  }
}

TEST_CASE("reflect-array loss outside the usual band warns")
{
  UnitCellDesign r = default_reflect_array();
  CHECK(insertion_loss(r).db == 8.0);
  CHECK_FALSE(insertion_loss(r).warning);
  r.insertion_loss_db = 12.0;
  CHECK(insertion_loss(r).warning);
}

TEST_CASE("tuning curve matches its closed form and inverse")
{
  const UnitCellDesign d = default_phased_array();
  const TuningCurve s(d);
  CHECK(s(0.0) == 0.0);
  CHECK(s(1.0) == 0.0);
  CHECK(s(10.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double v = 0.0; v <= 10.0; v += 0.37)
    CHECK(s(v) == doctest::Approx(oracle::saturation(v, 1.0, 10.0, 2.0)).epsilon(1e-14));
  for (double x = 0.0; x <= 1.0; x += 0.05)
    CHECK(s.inverse(x) == doctest::Approx(oracle::saturation_inverse(x, 1.0, 10.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("phased-array phase agrees with the line formula")
{
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  UnitCellDesign d = default_phased_array();
  d.l_ps = 18.0;
  for (double v = 0.0; v <= 10.0; v += 0.5)
  {
    const double eps = 2.46 + (3.53 - 2.46) * oracle::saturation(v, 1.0, 10.0, 2.0);
    CHECK(phase_shift(d, gt7, v, 20.0, 28.0, tmodel) ==
          doctest::Approx(oracle::line_phase(28.0, 18.0, 2.46, eps)).epsilon(1e-12).scale(1e-12));
  }
}

TEST_CASE("phase is non-decreasing in voltage for every mixture")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> volts(0.0, 10.0);
  std::vector<double> vs(1000);
  for (auto &v : vs)
    v = volts(rng);
  std::sort(vs.begin(), vs.end());
  for (const auto &mix : builtin_mixtures())
  {
    const UnitCellDesign d = default_phased_array();
    double prev = -1.0;
    bool ok = true;
    for (double v : vs)
    {
      const double p = phase_shift(d, mix, v, 20.0, 28.0, tmodel);
      ok = ok && p >= prev;
      prev = p;
    }
    CHECK_MESSAGE(ok, mix.name);
  }
}

TEST_CASE("voltage_for_phase inverts phase_shift")
{
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  const UnitCellDesign d = default_phased_array();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> target(0.0, two_pi);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i)
  {
    const double p = target(rng);
    const double v = voltage_for_phase(d, gt7, 20.0, 28.0, tmodel, p);
    worst = std::max(worst, std::abs(phase_shift(d, gt7, v, 20.0, 28.0, tmodel) - p));
  }
  CHECK(worst <= 1e-9);
  CHECK(voltage_for_phase(d, gt7, 20.0, 28.0, tmodel, 0.0) == 0.0);
  CHECK(voltage_for_phase(d, gt7, 20.0, 28.0, tmodel, max_phase_shift(d, gt7, 20.0, 28.0, tmodel)) == 10.0);
}

TEST_CASE("unreachable targets and out-of-range voltages are reported")
{
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  const UnitCellDesign d = default_phased_array();
  try
  {
    voltage_for_phase(d, gt7, 100.0, 28.0, tmodel, 6.0);
    FAIL("expected an error");
  }
  catch (const TargetUnreachableError &e)
  {
    CHECK(e.target() == 6.0);
    CHECK(e.available() < 6.0);
  }
  CHECK_THROWS_AS(phase_shift(d, gt7, 10.5, 20.0, 28.0, tmodel), VoltageRangeError);
  CHECK_THROWS_AS(phase_shift(d, gt7, -0.1, 20.0, 28.0, tmodel), VoltageRangeError);
}

TEST_CASE("phase range is linear in line length")
{
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  UnitCellDesign d = default_phased_array();
  d.l_ps = 10.0;
  const double base = max_phase_shift(d, gt7, 20.0, 28.0, tmodel);
  for (double l : {5.0, 12.5, 20.0, 40.0})
  {
    d.l_ps = l;
    CHECK(max_phase_shift(d, gt7, 20.0, 28.0, tmodel) == doctest::Approx(base * l / 10.0).epsilon(1e-12));
  }
}

TEST_CASE("phase range shrinks with temperature and vanishes at the clearing point")
{
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  const UnitCellDesign d = default_phased_array();
  double prev = 1e9;
  for (double t = -30.0; t <= 124.0; t += 10.0)
  {
    const double m = max_phase_shift(d, gt7, t, 28.0, tmodel);
    CHECK(m <= prev);
    prev = m;
  }
  CHECK(max_phase_shift(d, gt7, 124.0, 28.0, tmodel) == 0.0);

  const UnitCellDesign r = default_reflect_array();
  CHECK(max_phase_shift(r, gt7, 20.0, 28.0, tmodel) == doctest::Approx(two_pi));
  CHECK(max_phase_shift(r, gt7, 124.0, 28.0, tmodel) == 0.0);
}

TEST_CASE("cell kind names round trip")
{
  CHECK(cell_kind_from_string(to_string(CellKind::phased_array)) == CellKind::phased_array);
  CHECK(cell_kind_from_string(to_string(CellKind::reflect_array)) == CellKind::reflect_array);
  CHECK_THROWS_AS(cell_kind_from_string("pin_diode"), std::invalid_argument);
}
