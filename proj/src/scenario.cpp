// SPDX-License-Identifier: Apache-2.0

#include "lcris/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace lcris
{

namespace
{

const std::vector<std::string> required_keys = {
    "geometry.rows",       "geometry.cols",         "unitcell.kind",
    "material.mixture",    "operating.temperature", "operating.frequency",
    "schedule.0.time",     "schedule.0.phi",        "schedule.0.theta",
    "snapshots.times",     "transient.tau_on",
};

const std::vector<std::string> &known_keys()
{
  static const std::vector<std::string> keys = {
      "geometry.rows",
      "geometry.cols",
      "geometry.spacing",
      "unitcell.kind",
      "unitcell.d_lc",
      "unitcell.l_ps",
      "unitcell.design_frequency",
      "unitcell.v_threshold",
      "unitcell.v_mid",
      "unitcell.v_max",
      "unitcell.v_slope",
      "unitcell.insertion_loss_db",
      "unitcell.insertion_loss_anchor_lps",
      "unitcell.max_phase_reflect",
      "material.mixture",
      "material.file",
      "material.reference_temperature",
      "material.haller_exponent",
      "operating.temperature",
      "operating.frequency",
      "incident.phi",
      "incident.theta",
      "initial.phi",
      "initial.theta",
      "initial.beamwidth",
      "schedule.<i>.time",
      "schedule.<i>.phi",
      "schedule.<i>.theta",
      "schedule.<i>.beamwidth",
      "snapshots.times",
      "transient.tau_on",
      "transient.tau_off",
      "grid.phi_min",
      "grid.phi_max",
      "grid.theta_min",
      "grid.theta_max",
      "grid.step",
      "farfield.method",
      "farfield.fft_size",
      "metrics.mask_radius_factor",
      "design.beamwidth_tolerance",
      "seed",
  };
  return keys;
}

std::string join(const std::vector<std::string> &items)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i)
    os << (i ? ", " : "") << items[i];
  return os.str();
}

class Reader
{
public:
  explicit Reader(const KeyValueDocument &doc) : doc_(doc) {}

  double number(const std::string &key, double fallback) const
  {
    return doc_.contains(key) ? doc_.get_double(key) : fallback;
  }

  [[noreturn]] void fail(const std::string &key, const std::string &message) const
  {
    throw ParseError(ParseError::Kind::invariant, key, doc_.line_of(key), message);
  }

  void require(bool ok, const std::string &key, const std::string &message) const
  {
    if (!ok)
      fail(key, message);
  }

  const KeyValueDocument &doc() const { return doc_; }

private:
  const KeyValueDocument &doc_;
};

bool is_schedule_key(const std::string &key, std::size_t &index, std::string &field)
{
  const std::string prefix = "schedule.";
  if (key.rfind(prefix, 0) != 0)
    return false;
  const auto dot = key.find('.', prefix.size());
  if (dot == std::string::npos)
    return false;
  const std::string number = key.substr(prefix.size(), dot - prefix.size());
  if (number.empty() || !std::all_of(number.begin(), number.end(), ::isdigit))
    return false;
  index = std::stoul(number);
  field = key.substr(dot + 1);
  return true;
}

void reject_unknown_keys(const KeyValueDocument &doc)
{
  std::set<std::string> known(known_keys().begin(), known_keys().end());
  for (const auto &key : doc.keys())
  {
    std::size_t index = 0;
    std::string field;
    if (is_schedule_key(key, index, field))
    {
      if (field == "time" || field == "phi" || field == "theta" || field == "beamwidth")
        continue;
    }
    else if (known.count(key))
    {
      continue;
    }
    throw ParseError(ParseError::Kind::syntax, key, doc.line_of(key), "unknown key");
  }
}

Direction read_direction(const Reader &in, const std::string &section)
{
  Direction d{in.doc().get_double(section + ".phi"), in.doc().get_double(section + ".theta")};
  try
  {
    validate(d);
  }
  catch (const std::invalid_argument &e)
  {
    in.fail(section + ".phi", e.what());
  }
  return d;
}

} // namespace

double Scenario::horizon() const
{
  double h = schedule.empty() ? 0.0 : schedule.back().switch_time;
  if (!snapshot_times.empty())
    h = std::max(h, snapshot_times.back());
  return h;
}

const std::vector<std::string> &scenario_keys() { return known_keys(); }

Scenario parse_scenario_text(const std::string &text, const std::filesystem::path &base_dir)
{
  const KeyValueDocument doc = KeyValueDocument::parse(text);
  if (doc.empty())
    throw ParseError(ParseError::Kind::missing_field, "", 0,
                     "scenario is empty; required keys: " + join(required_keys));
  std::vector<std::string> missing;
  for (const auto &key : required_keys)
    if (!doc.contains(key) && !(key == "material.mixture" && doc.contains("material.file")))
      missing.push_back(key);
  if (!missing.empty())
    throw ParseError(ParseError::Kind::missing_field, missing.front(), 0,
                     "missing required keys: " + join(missing));
  reject_unknown_keys(doc);

  const Reader in(doc);
  Scenario sc;

  // Material first: the unit-cell defaults depend on the temperature model.
  MixtureRegistry registry;
  std::string mixture_name = doc.find_string("material.mixture").value_or("");
  if (doc.contains("material.file"))
  {
    std::filesystem::path file = doc.get_string("material.file");
    if (file.is_relative())
      file = base_dir / file;
    try
    {
      LcMixture user = load_mixture_file(file);
      if (mixture_name.empty())
        mixture_name = user.name;
      registry.add(std::move(user));
    }
    catch (const ParseError &e)
    {
      throw ParseError(e.kind(), "material.file", doc.line_of("material.file"), e.what());
    }
  }
  try
  {
    sc.mixture = registry.lookup(mixture_name);
  }
  catch (const UnknownMixtureError &e)
  {
    in.fail("material.mixture", e.what());
  }
  sc.temperature_model.reference_temperature =
      in.number("material.reference_temperature", sc.temperature_model.reference_temperature);
  sc.temperature_model.haller_exponent =
      in.number("material.haller_exponent", sc.temperature_model.haller_exponent);
  in.require(sc.temperature_model.reference_temperature < sc.mixture.clearing_point,
             "material.reference_temperature",
             "reference temperature must lie below the clearing point of " + sc.mixture.name);
  in.require(sc.temperature_model.haller_exponent > 0.0 &&
                 sc.temperature_model.haller_exponent < 1.0,
             "material.haller_exponent", "Haller exponent must lie in (0, 1)");

  sc.temperature = doc.get_double("operating.temperature");
  sc.frequency_ghz = doc.get_double("operating.frequency");
  in.require(sc.frequency_ghz > 0.0, "operating.frequency", "frequency must be positive");

  sc.geometry.n_rows = static_cast<int>(doc.get_int("geometry.rows"));
  sc.geometry.n_cols = static_cast<int>(doc.get_int("geometry.cols"));
  sc.geometry.spacing_wavelengths = in.number("geometry.spacing", 0.5);
  sc.geometry.wavelength = speed_of_light / (sc.frequency_ghz * 1e9);
  in.require(sc.geometry.n_rows >= 1, "geometry.rows", "must be at least 1");
  in.require(sc.geometry.n_cols >= 1, "geometry.cols", "must be at least 1");
  in.require(sc.geometry.spacing_wavelengths > 0.0, "geometry.spacing", "must be positive");

  const std::string kind_text = doc.get_string("unitcell.kind");
  try
  {
    sc.unitcell = cell_kind_from_string(kind_text) == CellKind::phased_array
                      ? default_phased_array(sc.temperature_model)
                      : default_reflect_array();
  }
  catch (const std::invalid_argument &e)
  {
    throw ParseError(ParseError::Kind::type_mismatch, "unitcell.kind",
                     doc.line_of("unitcell.kind"), e.what());
  }
  UnitCellDesign &uc = sc.unitcell;
  uc.d_lc = in.number("unitcell.d_lc", uc.d_lc);
  uc.l_ps = in.number("unitcell.l_ps", uc.l_ps);
  uc.design_frequency = in.number("unitcell.design_frequency", uc.design_frequency);
  uc.v_threshold = in.number("unitcell.v_threshold", uc.v_threshold);
  uc.v_mid = in.number("unitcell.v_mid", uc.v_mid);
  uc.v_max = in.number("unitcell.v_max", uc.v_max);
  uc.v_slope = in.number("unitcell.v_slope", uc.v_slope);
  uc.insertion_loss_db = in.number("unitcell.insertion_loss_db", uc.insertion_loss_db);
  uc.insertion_loss_anchor_lps_mm =
      in.number("unitcell.insertion_loss_anchor_lps", uc.insertion_loss_anchor_lps_mm);
  uc.max_phase_reflect = in.number("unitcell.max_phase_reflect", uc.max_phase_reflect);
  try
  {
    validate(uc);
  }
  catch (const std::invalid_argument &e)
  {
    in.fail("unitcell.kind", e.what());
  }

  sc.incident = {in.number("incident.phi", 0.0), in.number("incident.theta", 0.0)};
  try
  {
    validate(sc.incident);
  }
  catch (const std::invalid_argument &e)
  {
    in.fail(doc.contains("incident.phi") ? "incident.phi" : "incident.theta", e.what());
  }

  if (doc.contains("initial.phi") || doc.contains("initial.theta"))
  {
    sc.initial = BeamRequest{read_direction(in, "initial"), in.number("initial.beamwidth", 0.0)};
    in.require(sc.initial->beamwidth_deg >= 0.0, "initial.beamwidth", "must be non-negative");
  }

  // Schedule entries must be numbered 0..n-1 without gaps.
  std::size_t entries = 0;
  for (const auto &key : doc.keys_with_prefix("schedule."))
  {
    std::size_t index = 0;
    std::string field;
    if (is_schedule_key(key, index, field))
      entries = std::max(entries, index + 1);
  }
  for (std::size_t i = 0; i < entries; ++i)
  {
    const std::string section = "schedule." + std::to_string(i);
    ScheduleEntry entry;
    entry.switch_time = doc.get_double(section + ".time");
    entry.beam.target = read_direction(in, section);
    entry.beam.beamwidth_deg = in.number(section + ".beamwidth", 0.0);
    in.require(entry.beam.beamwidth_deg >= 0.0, section + ".beamwidth", "must be non-negative");
    if (i == 0)
      in.require(entry.switch_time == 0.0, section + ".time", "first switch time must be 0");
    else
      in.require(entry.switch_time > sc.schedule.back().switch_time, section + ".time",
                 "switch times must be strictly increasing");
    sc.schedule.push_back(entry);
  }

  sc.snapshot_times = doc.get_double_list("snapshots.times");
  in.require(!sc.snapshot_times.empty(), "snapshots.times", "at least one snapshot is needed");
  in.require(std::is_sorted(sc.snapshot_times.begin(), sc.snapshot_times.end()),
             "snapshots.times", "snapshot times must be sorted ascending");
  in.require(sc.snapshot_times.front() >= 0.0, "snapshots.times",
             "snapshot times must be non-negative");

  sc.transient.tau_on_90 = doc.get_double("transient.tau_on");
  sc.transient.tau_off_90 = doc.contains("transient.tau_off")
                                ? doc.get_double("transient.tau_off")
                                : response_time(sc.mixture, uc.d_lc, default_response_calibration());
  in.require(sc.transient.tau_on_90 > 0.0, "transient.tau_on", "must be positive");
  in.require(sc.transient.tau_on_90 <= sc.transient.tau_off_90,
             doc.contains("transient.tau_off") ? "transient.tau_off" : "transient.tau_on",
             "tau_on must not exceed tau_off");

  const double step = in.number("grid.step", 1.0);
  sc.grid = AngularGrid::phi_theta(in.number("grid.phi_min", -90.0), in.number("grid.phi_max", 90.0),
                                   step, in.number("grid.theta_min", -90.0),
                                   in.number("grid.theta_max", 90.0), step);
  try
  {
    validate(sc.grid);
  }
  catch (const std::invalid_argument &e)
  {
    in.fail("grid.step", e.what());
  }

  const std::string method = doc.find_string("farfield.method").value_or("fft");
  if (method == "fft")
    sc.farfield.method = FarFieldMethod::fft;
  else if (method == "direct")
    sc.farfield.method = FarFieldMethod::direct;
  else
    throw ParseError(ParseError::Kind::type_mismatch, "farfield.method",
                     doc.line_of("farfield.method"), "expected 'fft' or 'direct'");
  if (doc.contains("farfield.fft_size"))
    sc.farfield.fft_size = static_cast<int>(doc.get_int("farfield.fft_size"));
  in.require(sc.farfield.fft_size >= std::max(sc.geometry.n_rows, sc.geometry.n_cols),
             "farfield.fft_size", "FFT raster must be at least as large as the array");

  sc.mask_radius_factor = in.number("metrics.mask_radius_factor", sc.mask_radius_factor);
  in.require(sc.mask_radius_factor > 0.0, "metrics.mask_radius_factor", "must be positive");
  sc.beamwidth_tolerance_deg = in.number("design.beamwidth_tolerance", sc.beamwidth_tolerance_deg);
  in.require(sc.beamwidth_tolerance_deg > 0.0, "design.beamwidth_tolerance", "must be positive");
  if (doc.contains("seed"))
  {
    const long seed = doc.get_int("seed");
    in.require(seed >= 0, "seed", "must be non-negative");
    sc.seed = static_cast<std::uint64_t>(seed);
  }
  return sc;
}

Scenario parse_scenario(const std::filesystem::path &path)
{
  std::ifstream file(path);
  if (!file)
    throw ParseError(ParseError::Kind::io, "", 0, "cannot read '" + path.string() + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_scenario_text(text.str(), path.parent_path());
}

} // namespace lcris
