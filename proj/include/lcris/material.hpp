// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcris
{

/// Material constants of one nematic LC blend. Permittivities are relative,
/// clearing point in degrees Celsius, K11 in pN and rotational viscosity in Pa*s.
struct LcMixture
{
  std::string name;
  double eps_perp = 0.0;
  double tan_delta_perp = 0.0;
  double eps_par = 0.0;
  double tan_delta_par = 0.0;
  double clearing_point = 0.0;
  double k11 = 0.0;
  double gamma_rot = 0.0;
};

/// Haller-type power law for the anisotropy. Temperatures in degrees Celsius.
struct TemperatureModel
{
  double reference_temperature = 20.0;
  double haller_exponent = 0.2;
};

/// One measured switch-off time that fixes the proportionality constant of
/// tau_off ~ gamma_rot * d^2 / K11.
struct ResponseCalibration
{
  LcMixture mixture;
  double d_lc_um = 0.0;
  double tau_off_s = 0.0;
};

class UnknownMixtureError : public std::invalid_argument
{
public:
  UnknownMixtureError(const std::string &name, const std::vector<std::string> &available);
};

/// Throws std::invalid_argument when a field violates the mixture invariants.
void validate(const LcMixture &mix);

/// The four built-in mixtures in table order.
const std::vector<LcMixture> &builtin_mixtures();

/// Built-in mixtures plus any user-registered ones. Registration replaces an
/// existing entry of the same name.
class MixtureRegistry
{
public:
  MixtureRegistry();

  const LcMixture &lookup(const std::string &name) const;
  void add(LcMixture mix);
  std::vector<std::string> names() const;

private:
  std::map<std::string, LcMixture> mixtures_;
  std::vector<std::string> order_;
};

/// Lookup in the built-in table only.
LcMixture lookup_mixture(const std::string &name);

/// Parses a `key = value` file holding the eight LcMixture fields.
LcMixture load_mixture_file(const std::filesystem::path &path);

inline double delta_epsilon(const LcMixture &mix) { return mix.eps_par - mix.eps_perp; }

/// Anisotropy at `temperature`. Exactly zero at or above the clearing point.
double delta_epsilon_at_temperature(const LcMixture &mix, double temperature,
                                    const TemperatureModel &model);

/// Anchor used when none is configured: GT7-29001, 4.6 um, 70 ms.
ResponseCalibration default_response_calibration();

/// Switch-off time in seconds for a layer of thickness `d_lc_um`.
double response_time(const LcMixture &mix, double d_lc_um, const ResponseCalibration &calibration);

} // namespace lcris
