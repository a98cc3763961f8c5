// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lcris/design.hpp"
#include "lcris/dynamics.hpp"
#include "lcris/farfield.hpp"
#include "lcris/keyvalue.hpp"
#include "lcris/material.hpp"
#include "lcris/unitcell.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lcris
{

/// Requested reflected beam. A beamwidth of zero asks for a plain steering
/// profile.
struct BeamRequest
{
  Direction target;
  double beamwidth_deg = 0.0;
};

struct ScheduleEntry
{
  double switch_time = 0.0;
  BeamRequest beam;
};

/// Complete description of one simulation run.
///
/// The surface starts at rest in `initial` when given; otherwise it starts at
/// rest in the first schedule entry. Every schedule entry after that (and the
/// first one when `initial` is present) retargets the surface at its switch
/// time. Snapshot times are absolute.
struct Scenario
{
  ArrayGeometry geometry;
  UnitCellDesign unitcell;
  LcMixture mixture;
  TemperatureModel temperature_model;
  double temperature = 20.0;
  double frequency_ghz = 28.0;
  Direction incident;
  std::optional<BeamRequest> initial;
  std::vector<ScheduleEntry> schedule;
  std::vector<double> snapshot_times;
  AngularGrid grid;
  TransientParams transient;
  FarFieldOptions farfield;
  double mask_radius_factor = 2.0;
  std::uint64_t seed = 0;
  /// Quadratic-beam width tolerance, degrees.
  double beamwidth_tolerance_deg = 0.25;

  double horizon() const;
  bool has_transition_at(std::size_t entry) const { return entry > 0 || initial.has_value(); }
};

/// Reads and validates a scenario file. Relative `material.file` paths are
/// resolved against the scenario's directory.
Scenario parse_scenario(const std::filesystem::path &path);

/// Same as parse_scenario for in-memory text.
Scenario parse_scenario_text(const std::string &text,
                             const std::filesystem::path &base_dir = ".");

/// Keys accepted in a scenario file, in documentation order. Schedule keys
/// appear once with `<i>` standing for the entry index.
const std::vector<std::string> &scenario_keys();

} // namespace lcris
