// SPDX-License-Identifier: Apache-2.0

#include "lcris/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcris
{

namespace
{

ElementMatrix uniform_amplitudes(const Scenario &sc, double loss_db)
{
  return ElementMatrix::Constant(sc.geometry.n_rows, sc.geometry.n_cols, loss_amplitude(loss_db));
}

double masked_max(const Pattern &pattern, const std::vector<std::pair<Direction, double>> &caps)
{
  double best = -1.0;
  for (int r = 0; r < pattern.rows(); ++r)
  {
    for (int c = 0; c < pattern.cols(); ++c)
    {
      if (!pattern.is_valid(r, c))
        continue;
      const Direction &dir = pattern.directions[pattern.index(r, c)];
      const bool masked = std::any_of(caps.begin(), caps.end(), [&](const auto &cap) {
        return angular_distance_deg(dir, cap.first) <= cap.second;
      });
      if (!masked)
        best = std::max(best, pattern.at(r, c));
    }
  }
  if (best < 0.0)
    throw std::domain_error("interference masks cover the entire visible region");
  return best;
}

} // namespace

RealizedBeam realize_beam(const Scenario &sc, const BeamRequest &request)
{
  RealizedBeam beam;
  beam.request = request;
  if (request.beamwidth_deg > 0.0)
  {
    QuadraticOptions options;
    options.grid_step_deg = sc.grid.phi_step;
    options.tolerance_deg = sc.beamwidth_tolerance_deg;
    beam.design =
        quadratic_profile(sc.geometry, sc.incident, request.target, request.beamwidth_deg, options);
  }
  else
  {
    beam.design.profile = steering_profile(sc.geometry, sc.incident, request.target);
    beam.design.measured_peak = request.target;
    beam.design.converged = true;
  }

  VoltageMap map = temperature_aware_voltages(beam.design.profile, sc.unitcell, sc.mixture,
                                              sc.temperature, sc.frequency_ghz,
                                              sc.temperature_model);
  beam.feasibility = map.report;
  beam.voltages = std::move(map.voltages);
  beam.phases = realized_phases(beam.voltages, sc.unitcell, sc.mixture, sc.temperature,
                                sc.frequency_ghz, sc.temperature_model);
  return beam;
}

std::size_t segment_at(const std::vector<TimelineSegment> &timeline, double t)
{
  if (timeline.empty())
    throw std::invalid_argument("empty timeline");
  std::size_t k = 0;
  while (k + 1 < timeline.size() && timeline[k + 1].switch_time <= t)
    ++k;
  return k;
}

ElementMatrix phases_at_time(const std::vector<TimelineSegment> &timeline, double t,
                             const TransientParams &params)
{
  const TimelineSegment &seg = timeline[segment_at(timeline, t)];
  return phases_at(seg.field, std::max(0.0, t - seg.switch_time), params);
}

TransientMetrics transient_metrics(const std::vector<Pattern> &patterns,
                                   const std::vector<Pattern> &steady,
                                   const std::vector<TimelineSegment> &timeline,
                                   const std::vector<RealizedBeam> &beams,
                                   double mask_radius_factor)
{
  if (steady.size() != timeline.size())
    throw std::invalid_argument("need one steady-state pattern per timeline segment");

  TransientMetrics m;
  auto cap = [&](std::size_t beam) {
    const BeamRequest &req = beams[beam].request;
    const double width = req.beamwidth_deg > 0.0 ? req.beamwidth_deg
                                                 : std::max(beams[beam].design.measured_width_deg, 1.0);
    return std::make_pair(req.target, mask_radius_factor * width);
  };

  for (const Pattern &p : patterns)
  {
    const TimelineSegment &seg = timeline[segment_at(timeline, p.timestamp)];
    std::vector<std::pair<Direction, double>> caps{cap(seg.beam)};
    if (seg.transition)
      caps.push_back(cap(seg.previous_beam));
    m.masked_max.push_back(masked_max(p, caps));
  }
  if (!m.masked_max.empty())
    m.peak_transient_interference = *std::max_element(m.masked_max.begin(), m.masked_max.end());
  for (std::size_t i = 0; i + 1 < patterns.size(); ++i)
    m.integrated_interference += 0.5 * (patterns[i + 1].timestamp - patterns[i].timestamp) *
                                 (m.masked_max[i] + m.masked_max[i + 1]);

  const double horizon = patterns.empty() ? 0.0 : patterns.back().timestamp;
  for (std::size_t k = 0; k < timeline.size(); ++k)
  {
    const TimelineSegment &seg = timeline[k];
    if (!seg.transition)
      continue;
    const double end = k + 1 < timeline.size() ? timeline[k + 1].switch_time
                                               : std::numeric_limits<double>::infinity();
    const Direction &target = beams[seg.beam].request.target;
    const double goal = 0.9 * steady[k].value_near(target);
    bool reached = false;
    for (const Pattern &p : patterns)
    {
      if (p.timestamp < seg.switch_time || p.timestamp >= end)
        continue;
      if (p.value_near(target) >= goal)
      {
        m.convergence_time = std::max(m.convergence_time, p.timestamp - seg.switch_time);
        reached = true;
        break;
      }
    }
    if (!reached)
    {
      m.converged = false;
      m.convergence_time =
          std::max(m.convergence_time, std::max(0.0, std::min(end, horizon) - seg.switch_time));
    }
  }
  return m;
}

RunResult run(const Scenario &sc)
{
  validate(sc.geometry);
  validate(sc.unitcell);
  validate(sc.transient);

  RunResult result;
  const InsertionLoss loss = insertion_loss(sc.unitcell);
  result.insertion_loss_db = loss.db;
  if (loss.warning)
    result.warnings.push_back(*loss.warning);

  if (sc.initial)
    result.beams.push_back(realize_beam(sc, *sc.initial));
  for (const auto &entry : sc.schedule)
    result.beams.push_back(realize_beam(sc, entry.beam));
  for (std::size_t i = 0; i < result.beams.size(); ++i)
  {
    const auto &b = result.beams[i];
    if (!b.feasibility.feasible)
      result.warnings.push_back("beam " + std::to_string(i) + ": " +
                                std::to_string(100.0 * b.feasibility.clipped_fraction) +
                                " % of elements clipped to the available phase range");
    if (b.request.beamwidth_deg > 0.0 && !b.design.converged)
      result.warnings.push_back("beam " + std::to_string(i) +
                                ": beamwidth calibration did not meet the tolerance (measured " +
                                std::to_string(b.design.measured_width_deg) + " deg)");
  }

  const std::size_t offset = sc.initial ? 1 : 0;
  for (std::size_t i = 0; i < sc.schedule.size(); ++i)
  {
    TimelineSegment seg;
    seg.switch_time = sc.schedule[i].switch_time;
    seg.beam = i + offset;
    seg.transition = sc.has_transition_at(i);
    seg.previous_beam = seg.transition ? seg.beam - 1 : seg.beam;
    if (result.timeline.empty())
    {
      const auto &start = result.beams[seg.previous_beam].phases;
      seg.field = retarget(PhaseField::settled(start), result.beams[seg.beam].phases);
    }
    else
    {
      const TimelineSegment &prev = result.timeline.back();
      const PhaseField now = advance(prev.field, seg.switch_time - prev.switch_time, sc.transient);
      seg.field = retarget(now, result.beams[seg.beam].phases);
    }
    result.timeline.push_back(std::move(seg));
  }

  const ElementMatrix amplitudes = uniform_amplitudes(sc, loss.db);
  for (double t : sc.snapshot_times)
  {
    const ElementMatrix phases = phases_at_time(result.timeline, t, sc.transient);
    Pattern p = nrcs_map(sc.geometry, phases, amplitudes, sc.incident, sc.grid, sc.farfield);
    p.timestamp = t;
    result.patterns.push_back(std::move(p));
  }
  for (const auto &seg : result.timeline)
  {
    const double settle = 10.0 * sc.transient.tau_off_90;
    const ElementMatrix phases = phases_at(seg.field, settle, sc.transient);
    Pattern p = nrcs_map(sc.geometry, phases, amplitudes, sc.incident, sc.grid, sc.farfield);
    p.timestamp = seg.switch_time + settle;
    result.steady_patterns.push_back(std::move(p));
  }

  result.metrics = transient_metrics(result.patterns, result.steady_patterns, result.timeline,
                                     result.beams, sc.mask_radius_factor);
  return result;
}

SweepAxis sweep_axis_from_string(const std::string &text)
{
  if (text == "lps")
    return SweepAxis::lps;
  if (text == "dlc")
    return SweepAxis::dlc;
  if (text == "temperature")
    return SweepAxis::temperature;
  if (text == "mixture")
    return SweepAxis::mixture;
  throw std::invalid_argument("unknown sweep axis '" + text +
                              "' (expected lps, dlc, temperature or mixture)");
}

const char *to_string(SweepAxis axis)
{
  switch (axis)
  {
  case SweepAxis::lps:
    return "lps";
  case SweepAxis::dlc:
    return "dlc";
  case SweepAxis::temperature:
    return "temperature";
  case SweepAxis::mixture:
    return "mixture";
  }
  return "unknown";
}

std::vector<SweepRow> sweep(const Scenario &base, SweepAxis axis,
                            const std::vector<std::string> &values)
{
  const BeamRequest request = base.initial ? *base.initial : base.schedule.front().beam;
  // The phase design only depends on geometry and directions, which no axis
  // changes; calibrate it once.
  const RealizedBeam designed = realize_beam(base, request);
  const MixtureRegistry registry;

  std::vector<SweepRow> rows;
  for (const std::string &text : values)
  {
    Scenario sc = base;
    double number = 0.0;
    if (axis != SweepAxis::mixture)
    {
      std::size_t used = 0;
      try
      {
        number = std::stod(text, &used);
      }
      catch (const std::exception &)
      {
        used = 0;
      }
      if (used != text.size() || text.empty())
        throw std::invalid_argument("sweep value '" + text + "' is not a number");
    }
    switch (axis)
    {
    case SweepAxis::lps:
      if (sc.unitcell.kind != CellKind::phased_array)
        throw std::invalid_argument("l_ps sweeps need a phased-array unit cell");
      if (!(number > 0.0))
        throw std::invalid_argument("l_ps must be positive");
      sc.unitcell.l_ps = number;
      break;
    case SweepAxis::dlc:
      if (!(number > 0.0))
        throw std::invalid_argument("d_lc must be positive");
      sc.unitcell.d_lc = number;
      break;
    case SweepAxis::temperature:
      sc.temperature = number;
      break;
    case SweepAxis::mixture:
      sc.mixture = registry.lookup(text);
      if (!(sc.temperature_model.reference_temperature < sc.mixture.clearing_point))
        throw std::invalid_argument("reference temperature is above the clearing point of " +
                                    sc.mixture.name);
      break;
    }

    SweepRow row;
    row.value = text;
    row.max_phase = max_phase_shift(sc.unitcell, sc.mixture, sc.temperature, sc.frequency_ghz,
                                    sc.temperature_model);
    row.insertion_loss_db = insertion_loss(sc.unitcell).db;
    row.tau_off = response_time(sc.mixture, sc.unitcell.d_lc, default_response_calibration());

    const VoltageMap map =
        temperature_aware_voltages(designed.design.profile, sc.unitcell, sc.mixture,
                                   sc.temperature, sc.frequency_ghz, sc.temperature_model);
    const ElementMatrix phases = realized_phases(map.voltages, sc.unitcell, sc.mixture,
                                                 sc.temperature, sc.frequency_ghz,
                                                 sc.temperature_model);
    const Pattern p = nrcs_map(sc.geometry, phases, uniform_amplitudes(sc, row.insertion_loss_db),
                               sc.incident, sc.grid, sc.farfield);
    row.peak_nrcs = peak(p).value;
    row.feasible = map.report.feasible;
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace lcris
