// SPDX-License-Identifier: Apache-2.0

#include "lcris/material.hpp"

#include "lcris/keyvalue.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcris
{

namespace
{

constexpr double kelvin_offset = 273.15;

std::string join(const std::vector<std::string> &names)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < names.size(); ++i)
    os << (i ? ", " : "") << names[i];
  return os.str();
}

} // namespace

UnknownMixtureError::UnknownMixtureError(const std::string &name,
                                         const std::vector<std::string> &available)
    : std::invalid_argument("unknown mixture '" + name + "' (available: " + join(available) + ")")
{
}

void validate(const LcMixture &mix)
{
  auto fail = [&](const std::string &what) {
    throw std::invalid_argument("mixture '" + mix.name + "': " + what);
  };
  if (mix.name.empty())
    fail("name must not be empty");
  if (!(mix.eps_perp > 1.0))
    fail("eps_perp must exceed 1");
  if (!(mix.eps_par > mix.eps_perp))
    fail("eps_par must exceed eps_perp");
  if (!(mix.tan_delta_perp > 0.0 && mix.tan_delta_perp < 1.0))
    fail("tan_delta_perp must lie in (0, 1)");
  if (!(mix.tan_delta_par > 0.0 && mix.tan_delta_par < 1.0))
    fail("tan_delta_par must lie in (0, 1)");
  if (!(mix.k11 > 0.0))
    fail("k11 must be positive");
  if (!(mix.gamma_rot > 0.0))
    fail("gamma_rot must be positive");
  if (!(mix.clearing_point > -kelvin_offset))
    fail("clearing_point must be above absolute zero");
}

const std::vector<LcMixture> &builtin_mixtures()
{
  static const std::vector<LcMixture> table = {
      {"K15", 2.7, 0.0273, 3.1, 0.0132, 38.0, 7.0, 0.126},
      {"GT3-23001", 2.41, 0.0141, 3.18, 0.0037, 173.5, 24.0, 0.727},
      {"GT5-28004", 2.40, 0.0043, 3.32, 0.0014, 151.0, 11.8, 5.953},
      {"GT7-29001", 2.46, 0.0116, 3.53, 0.0064, 124.0, 14.5, 0.307},
  };
  return table;
}

MixtureRegistry::MixtureRegistry()
{
  for (const auto &mix : builtin_mixtures())
    add(mix);
}

const LcMixture &MixtureRegistry::lookup(const std::string &name) const
{
  const auto it = mixtures_.find(name);
  if (it == mixtures_.end())
    throw UnknownMixtureError(name, order_);
  return it->second;
}

void MixtureRegistry::add(LcMixture mix)
{
  validate(mix);
  if (!mixtures_.count(mix.name))
    order_.push_back(mix.name);
  const std::string key = mix.name;
  mixtures_[key] = std::move(mix);
}

std::vector<std::string> MixtureRegistry::names() const { return order_; }

LcMixture lookup_mixture(const std::string &name)
{
  const auto &table = builtin_mixtures();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const LcMixture &m) { return m.name == name; });
  if (it == table.end())
  {
    std::vector<std::string> names;
    for (const auto &m : table)
      names.push_back(m.name);
    throw UnknownMixtureError(name, names);
  }
  return *it;
}

LcMixture load_mixture_file(const std::filesystem::path &path)
{
  const auto doc = KeyValueDocument::load(path);
  LcMixture mix;
  mix.name = doc.get_string("name");
  mix.eps_perp = doc.get_double("eps_perp");
  mix.tan_delta_perp = doc.get_double("tan_delta_perp");
  mix.eps_par = doc.get_double("eps_par");
  mix.tan_delta_par = doc.get_double("tan_delta_par");
  mix.clearing_point = doc.get_double("clearing_point");
  mix.k11 = doc.get_double("k11");
  mix.gamma_rot = doc.get_double("gamma_rot");
  try
  {
    validate(mix);
  }
  catch (const std::invalid_argument &e)
  {
    throw ParseError(ParseError::Kind::invariant, "", 0, e.what());
  }
  return mix;
}

double delta_epsilon_at_temperature(const LcMixture &mix, double temperature,
                                    const TemperatureModel &model)
{
  if (!(model.reference_temperature < mix.clearing_point))
    throw std::invalid_argument("reference temperature must lie below the clearing point of '" +
                                mix.name + "'");
  if (temperature >= mix.clearing_point)
    return 0.0;
  if (temperature == model.reference_temperature)
    return delta_epsilon(mix);

  const double tc = mix.clearing_point + kelvin_offset;
  const double order = 1.0 - (temperature + kelvin_offset) / tc;
  const double order_ref = 1.0 - (model.reference_temperature + kelvin_offset) / tc;
  return delta_epsilon(mix) * std::pow(order / order_ref, model.haller_exponent);
}

ResponseCalibration default_response_calibration()
{
  return {lookup_mixture("GT7-29001"), 4.6, 0.070};
}

double response_time(const LcMixture &mix, double d_lc_um, const ResponseCalibration &calibration)
{
  if (!(d_lc_um > 0.0))
    throw std::invalid_argument("LC layer thickness must be positive");
  if (!(calibration.d_lc_um > 0.0) || !(calibration.tau_off_s > 0.0))
    throw std::invalid_argument("response calibration needs positive thickness and time");
  const double ratio = d_lc_um / calibration.d_lc_um;
  return calibration.tau_off_s * (mix.gamma_rot / calibration.mixture.gamma_rot) * ratio * ratio *
         (calibration.mixture.k11 / mix.k11);
}

} // namespace lcris
