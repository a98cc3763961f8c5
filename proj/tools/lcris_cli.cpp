// SPDX-License-Identifier: Apache-2.0

#include "lcris/parallel.hpp"
#include "lcris/simulation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

std::string read_text(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw lcris::ParseError(lcris::ParseError::Kind::io, "", 0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_values(const std::string &list)
{
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return out;
}

int fail(const std::string &kind, const std::string &message)
{
  std::cerr << "error: " << kind << ": " << message << '\n';
  return 2;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Beam switching simulator for liquid-crystal reflective surfaces"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string axis_name;
  std::string values;

  auto *run_cmd = app.add_subcommand("run", "simulate a scenario and export snapshots");
  run_cmd->add_option("scenario", scenario_path, "scenario file")->required();
  run_cmd->add_option("--out", out_dir, "output directory")->required();

  auto *sweep_cmd = app.add_subcommand("sweep", "vary one design parameter");
  sweep_cmd->add_option("scenario", scenario_path, "scenario file")->required();
  sweep_cmd->add_option("--axis", axis_name, "lps, dlc, temperature or mixture")->required();
  sweep_cmd->add_option("--values", values, "comma-separated values")->required();
  sweep_cmd->add_option("--out", out_dir, "output directory")->required();

  auto *validate_cmd = app.add_subcommand("validate", "parse and check a scenario");
  validate_cmd->add_option("scenario", scenario_path, "scenario file")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    return fail("usage", e.what());
  }

  try
  {
    lcris::configure_threads_from_environment();
    const std::string text = read_text(scenario_path);
    const lcris::Scenario sc =
        lcris::parse_scenario_text(text, std::filesystem::path(scenario_path).parent_path());

    if (*validate_cmd)
    {
      std::cout << "ok: " << sc.geometry.n_rows << "x" << sc.geometry.n_cols << " "
                << sc.mixture.name << ", " << sc.schedule.size() << " schedule entries, "
                << sc.snapshot_times.size() << " snapshots\n";
      return 0;
    }
    if (*run_cmd)
    {
      const lcris::RunResult result = lcris::run(sc);
      for (const auto &w : result.warnings)
        std::cerr << "warning: " << w << '\n';
      const auto files = lcris::export_run(result, sc, text, out_dir);
      for (const auto &f : files)
        std::cout << (std::filesystem::path(out_dir) / f).string() << '\n';
      return 0;
    }
    const lcris::SweepAxis axis = lcris::sweep_axis_from_string(axis_name);
    const auto rows = lcris::sweep(sc, axis, split_values(values));
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / ("sweep_" + axis_name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!(out << lcris::sweep_csv(axis, rows)))
      return fail("io", "cannot write " + path.string());
    std::cout << path.string() << '\n';
    return 0;
  }
  catch (const lcris::ParseError &e)
  {
    return fail(lcris::to_string(e.kind()), e.what());
  }
  catch (const lcris::UnknownMixtureError &e)
  {
    return fail("unknown-mixture", e.what());
  }
  catch (const std::filesystem::filesystem_error &e)
  {
    return fail("io", e.what());
  }
  catch (const std::runtime_error &e)
  {
    return fail("io", e.what());
  }
  catch (const std::exception &e)
  {
    return fail("invalid-argument", e.what());
  }
}
