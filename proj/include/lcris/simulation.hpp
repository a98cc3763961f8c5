// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lcris/scenario.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace lcris
{

inline constexpr const char *library_version = "1.0.0";

/// Designed beam after the unit-cell round trip.
struct RealizedBeam
{
  BeamRequest request;
  QuadraticDesign design;
  FeasibilityReport feasibility;
  ElementMatrix voltages;
  ElementMatrix phases;
};

/// Surface state right after each retarget, in switch-time order. The first
/// segment starts at t = 0.
struct TimelineSegment
{
  double switch_time = 0.0;
  std::size_t beam = 0;
  std::size_t previous_beam = 0;
  bool transition = false;
  PhaseField field;
};

struct TransientMetrics
{
  /// Slowest first-snapshot time (after its switch) at which the NRCS at a
  /// new target reaches 90 % of its steady-state value.
  double convergence_time = 0.0;
  bool converged = true;
  /// Largest NRCS outside the old/new target caps across snapshots.
  double peak_transient_interference = 0.0;
  /// Trapezoidal integral of the masked maximum over snapshot times.
  double integrated_interference = 0.0;
  /// Masked maximum per snapshot.
  std::vector<double> masked_max;
};

struct RunResult
{
  std::vector<RealizedBeam> beams;
  std::vector<TimelineSegment> timeline;
  std::vector<Pattern> patterns;
  /// Pattern at switch_time + 10 tau_off for each transition segment.
  std::vector<Pattern> steady_patterns;
  TransientMetrics metrics;
  double insertion_loss_db = 0.0;
  std::vector<std::string> warnings;
};

/// Phases at absolute time `t` along the timeline.
ElementMatrix phases_at_time(const std::vector<TimelineSegment> &timeline, double t,
                             const TransientParams &params);

/// Index of the segment active at time `t`.
std::size_t segment_at(const std::vector<TimelineSegment> &timeline, double t);

/// Designs every requested beam and maps it through the unit-cell model.
RealizedBeam realize_beam(const Scenario &scenario, const BeamRequest &request);

RunResult run(const Scenario &scenario);

/// Snapshot patterns are matched to timeline segments by their timestamps;
/// `steady` holds one pattern per segment.
TransientMetrics transient_metrics(const std::vector<Pattern> &patterns,
                                   const std::vector<Pattern> &steady,
                                   const std::vector<TimelineSegment> &timeline,
                                   const std::vector<RealizedBeam> &beams,
                                   double mask_radius_factor);

/// Writes one CSV per snapshot, `summary.txt` and `manifest.txt`. Returns the
/// written file names in order.
std::vector<std::string> export_run(const RunResult &result, const Scenario &scenario,
                                    const std::string &scenario_text,
                                    const std::filesystem::path &out_dir);

/// Exact CSV text of one pattern: header `phi_deg,theta_deg,nrcs_linear,nrcs_db`,
/// then one row per valid point in row-major order.
std::string pattern_csv(const Pattern &pattern);

/// Row-major CSV of a phase matrix, radians.
std::string matrix_csv(const ElementMatrix &matrix);

enum class SweepAxis
{
  lps,
  dlc,
  temperature,
  mixture,
};

SweepAxis sweep_axis_from_string(const std::string &text);
const char *to_string(SweepAxis axis);

struct SweepRow
{
  std::string value;
  double max_phase = 0.0;
  double insertion_loss_db = 0.0;
  double tau_off = 0.0;
  double peak_nrcs = 0.0;
  bool feasible = false;
};

/// Varies one design parameter of `base` and reports the phase range, loss,
/// switch-off time and the peak NRCS of the first designed beam.
std::vector<SweepRow> sweep(const Scenario &base, SweepAxis axis,
                            const std::vector<std::string> &values);

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow> &rows);

} // namespace lcris
