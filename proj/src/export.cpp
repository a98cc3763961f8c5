// SPDX-License-Identifier: Apache-2.0

#include "lcris/simulation.hpp"

#include <fmt/format.h>

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace lcris
{

namespace
{

std::uint64_t fnv1a(const std::string &text)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text)
  {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out)
    throw std::runtime_error("write failed for " + path.string());
}

void line(std::string &out, const std::string &key, double value)
{
  fmt::format_to(std::back_inserter(out), "{} = {:.10g}\n", key, value);
}

void line(std::string &out, const std::string &key, const std::string &value)
{
  fmt::format_to(std::back_inserter(out), "{} = {}\n", key, value);
}

} // namespace

std::string pattern_csv(const Pattern &pattern)
{
  std::string out = "phi_deg,theta_deg,nrcs_linear,nrcs_db\n";
  out.reserve(out.size() + pattern.values.size() * 48);
  for (int r = 0; r < pattern.rows(); ++r)
    for (int c = 0; c < pattern.cols(); ++c)
    {
      if (!pattern.is_valid(r, c))
        continue;
      const Direction &d = pattern.directions[pattern.index(r, c)];
      const double v = pattern.at(r, c);
      fmt::format_to(std::back_inserter(out), "{:.4f},{:.4f},{:.10e},{:.4f}\n", d.phi, d.theta, v,
                     to_db(v));
    }
  return out;
}

std::string matrix_csv(const ElementMatrix &matrix)
{
  std::string out;
  for (Eigen::Index r = 0; r < matrix.rows(); ++r)
  {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
      fmt::format_to(std::back_inserter(out), "{}{:.10e}", c ? "," : "", matrix(r, c));
    out += '\n';
  }
  return out;
}

std::vector<std::string> export_run(const RunResult &result, const Scenario &sc,
                                    const std::string &scenario_text,
                                    const std::filesystem::path &out_dir)
{
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> files;

  for (std::size_t i = 0; i < result.patterns.size(); ++i)
  {
    const Pattern &p = result.patterns[i];
    const std::string name = fmt::format("snapshot_{:02d}_t{:.3f}ms.csv", i, 1e3 * p.timestamp);
    write_file(out_dir / name, pattern_csv(p));
    files.push_back(name);
  }

  // Patterns carry the insertion loss; divide it out for the lossless figures.
  const double cap = loss_amplitude(result.insertion_loss_db) * loss_amplitude(result.insertion_loss_db);
  std::string s;
  line(s, "library_version", std::string(library_version));
  line(s, "mixture", sc.mixture.name);
  line(s, "unitcell_kind", std::string(to_string(sc.unitcell.kind)));
  line(s, "temperature_c", sc.temperature);
  line(s, "frequency_ghz", sc.frequency_ghz);
  line(s, "insertion_loss_db", result.insertion_loss_db);
  line(s, "nrcs_cap_linear", cap);
  line(s, "tau_on_s", sc.transient.tau_on_90);
  line(s, "tau_off_s", sc.transient.tau_off_90);
  line(s, "convergence_time_s", result.metrics.convergence_time);
  line(s, "converged", std::string(result.metrics.converged ? "true" : "false"));
  line(s, "peak_transient_interference", result.metrics.peak_transient_interference);
  line(s, "peak_transient_interference_lossless", result.metrics.peak_transient_interference / cap);
  line(s, "integrated_interference_s", result.metrics.integrated_interference);
  for (std::size_t i = 0; i < result.beams.size(); ++i)
  {
    const RealizedBeam &b = result.beams[i];
    const std::string k = fmt::format("beam.{}.", i);
    line(s, k + "phi_deg", b.request.target.phi);
    line(s, k + "theta_deg", b.request.target.theta);
    line(s, k + "requested_beamwidth_deg", b.request.beamwidth_deg);
    line(s, k + "measured_beamwidth_deg", b.design.measured_width_deg);
    line(s, k + "quadratic_coefficient", b.design.coefficient);
    line(s, k + "calibration_converged", std::string(b.design.converged ? "true" : "false"));
    line(s, k + "feasible", std::string(b.feasibility.feasible ? "true" : "false"));
    line(s, k + "clipped_fraction", b.feasibility.clipped_fraction);
    line(s, k + "available_phase_rad", b.feasibility.available_phase);
  }
  for (std::size_t i = 0; i < result.patterns.size(); ++i)
  {
    const Pattern &p = result.patterns[i];
    const PeakResult pk = peak(p);
    const std::string k = fmt::format("snapshot.{}.", i);
    line(s, k + "time_s", p.timestamp);
    line(s, k + "peak_phi_deg", pk.direction.phi);
    line(s, k + "peak_theta_deg", pk.direction.theta);
    line(s, k + "peak_nrcs", pk.value);
    line(s, k + "peak_nrcs_lossless", pk.value / cap);
    line(s, k + "masked_max", result.metrics.masked_max[i]);
  }
  for (std::size_t i = 0; i < result.warnings.size(); ++i)
    line(s, fmt::format("warning.{}", i), result.warnings[i]);
  write_file(out_dir / "summary.txt", s);
  files.push_back("summary.txt");

  std::string m;
  line(m, "library_version", std::string(library_version));
  line(m, "scenario_fnv1a64", fmt::format("{:016x}", fnv1a(scenario_text)));
  line(m, "seed", fmt::format("{}", sc.seed));
  for (std::size_t i = 0; i < files.size(); ++i)
    line(m, fmt::format("file.{}", i), files[i]);
  write_file(out_dir / "manifest.txt", m);
  files.push_back("manifest.txt");
  return files;
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow> &rows)
{
  std::string out = fmt::format("{},max_phase_rad,insertion_loss_db,tau_off_s,peak_nrcs,feasible\n",
                                to_string(axis));
  for (const SweepRow &r : rows)
    fmt::format_to(std::back_inserter(out), "{},{:.10g},{:.10g},{:.10g},{:.10e},{}\n", r.value,
                   r.max_phase, r.insertion_loss_db, r.tau_off, r.peak_nrcs, r.feasible ? 1 : 0);
  return out;
}

} // namespace lcris
