// SPDX-License-Identifier: Apache-2.0

#include "lcris/material.hpp"
#include "lcris/keyvalue.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace lcris;

TEST_CASE("built-in table holds the four mixtures exactly")
{
  const auto &t = builtin_mixtures();
  REQUIRE(t.size() == 4);
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  CHECK(gt7.eps_perp == 2.46);
  CHECK(gt7.tan_delta_perp == 0.0116);
  CHECK(gt7.eps_par == 3.53);
  CHECK(gt7.tan_delta_par == 0.0064);
  CHECK(gt7.clearing_point == 124.0);
  CHECK(gt7.k11 == 14.5);
  CHECK(gt7.gamma_rot == 0.307);
  CHECK(lookup_mixture("K15").clearing_point == 38.0);
  CHECK(lookup_mixture("GT5-28004").gamma_rot == 5.953);
  CHECK(lookup_mixture("GT3-23001").k11 == 24.0);
  for (const auto &m : t)
    CHECK_NOTHROW(validate(m));
}

TEST_CASE("unknown mixture names list the alternatives")
{
  try
  {
    lookup_mixture("E7");
    FAIL("expected an error");
  }
  catch (const UnknownMixtureError &e)
  {
    const std::string msg = e.what();
    CHECK(msg.find("E7") != std::string::npos);
    CHECK(msg.find("GT5-28004") != std::string::npos);
  }
}

TEST_CASE("registry add replaces entries of the same name")
{
  MixtureRegistry reg;
  LcMixture m = lookup_mixture("K15");
  m.k11 = 8.0;
  reg.add(m);
  CHECK(reg.lookup("K15").k11 == 8.0);
  CHECK(reg.names().size() == 4);
  m.name = "custom";
  reg.add(m);
  CHECK(reg.names().size() == 5);
}

TEST_CASE("invalid mixtures are rejected")
{
  LcMixture m = lookup_mixture("K15");
  m.eps_par = m.eps_perp;
  CHECK_THROWS_AS(validate(m), std::invalid_argument);
  m = lookup_mixture("K15");
  m.gamma_rot = 0.0;
  CHECK_THROWS_AS(validate(m), std::invalid_argument);
}

TEST_CASE("anisotropy follows the power law")
{
  const TemperatureModel tmodel;
  const LcMixture k15 = lookup_mixture("K15");
  CHECK(delta_epsilon_at_temperature(k15, 30.0, tmodel) == doctest::Approx(0.34011320016687757).epsilon(1e-12));
  CHECK(delta_epsilon_at_temperature(k15, 30.0, tmodel) ==
        doctest::Approx(oracle::haller(0.4, 30.0, 20.0, 38.0, 0.2)).epsilon(1e-13));
  CHECK(delta_epsilon_at_temperature(k15, 20.0, tmodel) == doctest::Approx(delta_epsilon(k15)).epsilon(1e-15));
  CHECK(delta_epsilon_at_temperature(k15, 38.0, tmodel) == 0.0);
  CHECK(delta_epsilon_at_temperature(k15, 60.0, tmodel) == 0.0);

  const LcMixture gt7 = lookup_mixture("GT7-29001");
  double prev = 1e9;
  for (double t = -30.0; t <= 124.0; t += 7.0)
  {
    const double d = delta_epsilon_at_temperature(gt7, t, tmodel);
    CHECK(d <= prev);
    CHECK(d == doctest::Approx(oracle::haller(1.07, t, 20.0, 124.0, 0.2)).epsilon(1e-12));
    prev = d;
  }
}

TEST_CASE("reference temperature at or above the clearing point is an error")
{
  TemperatureModel tmodel;
  tmodel.reference_temperature = 40.0;
  CHECK_THROWS_AS(delta_epsilon_at_temperature(lookup_mixture("K15"), 20.0, tmodel), std::invalid_argument);
}

TEST_CASE("switch-off time scales with viscosity, thickness and elasticity")
{
  const auto cal = default_response_calibration();
  const LcMixture gt7 = lookup_mixture("GT7-29001");
  CHECK(response_time(gt7, 4.6, cal) == 0.070);
  CHECK(response_time(gt7, 9.2, cal) / response_time(gt7, 4.6, cal) == 4.0);
  CHECK(response_time(lookup_mixture("K15"), 4.6, cal) == doctest::Approx(0.0595114006514658).epsilon(1e-12));
  CHECK(response_time(lookup_mixture("GT5-28004"), 9.2, cal) ==
        doctest::Approx(6.671777176613482).epsilon(1e-12));
  CHECK_THROWS_AS(response_time(gt7, 0.0, cal), std::invalid_argument);
}

TEST_CASE("mixture files load and report missing fields")
{
  const auto dir = std::filesystem::temp_directory_path() / "lcris_material_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "ok.mix");
    f << "name = TestLC\neps_perp = 2.5\ntan_delta_perp = 0.01\neps_par = 3.3\n"
         "tan_delta_par = 0.005\nclearing_point = 100\nk11 = 12\ngamma_rot = 0.3\n";
  }
  const LcMixture m = load_mixture_file(dir / "ok.mix");
  CHECK(m.name == "TestLC");
  CHECK(m.eps_par == 3.3);
  {
    std::ofstream f(dir / "bad.mix");
    f << "name = TestLC\neps_perp = 2.5\n";
  }
  try
  {
    load_mixture_file(dir / "bad.mix");
    FAIL("expected an error");
  }
  catch (const ParseError &e)
  {
    CHECK(e.kind() == ParseError::Kind::missing_field);
  }
}
