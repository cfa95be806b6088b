// Batch front-end: run one method, compare all four, or dump a master costmap.

#include <iostream>

#include <CLI11.hpp>

#include "bslnav/blindspot.hpp"
#include "bslnav/commands.hpp"

namespace cli = bslnav::cli;

int main(int argc, char** argv)
{
  CLI::App app{"Blind-spot aware navigation simulator"};
  app.require_subcommand(1);

  std::string scenario, method = "4", out_dir = "out", output;
  std::vector<std::string> params;
  double timeout = 0, t = 0;
  bool dump = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", scenario, "Scenario file")->required();
    sub->add_option("--param", params, "Override a parameter, KEY=VALUE (repeatable)");
    sub->add_option("--timeout", timeout, "Simulated-time limit in seconds");
  };

  CLI::App* run = app.add_subcommand("run", "Run one method on a scenario");
  add_common(run);
  run->add_option("--method", method, "Method number 1-4");
  run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--dump-costmaps", dump, "Write the master costmap of every cycle");

  CLI::App* compare = app.add_subcommand("compare", "Run all four methods and tabulate the outcomes");
  add_common(compare);
  compare->add_option("--out", out_dir, "Output directory");

  CLI::App* dump_cmd = app.add_subcommand("dump-costmap", "Write the master costmap nearest a given time");
  add_common(dump_cmd);
  dump_cmd->add_option("--method", method, "Method number 1-4");
  dump_cmd->add_option("--time", t, "Simulated time in seconds")->required();
  dump_cmd->add_option("--out", output, "Output PGM path")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return cli::kBadParameter;
  }

  cli::CommonOptions opts;
  try
  {
    for (const std::string& p : params) opts.params.insert(cli::parse_param(p));
  }
  catch (const bslnav::InvalidParameter& e)
  {
    std::cerr << "bslnav: invalid parameter: " << e.what() << '\n';
    return cli::kBadParameter;
  }
  for (CLI::App* sub : {run, compare, dump_cmd})
    if (sub->parsed() && sub->count("--timeout") > 0) opts.timeout = timeout;

  if (run->parsed()) return cli::cmd_run(scenario, method, out_dir, dump, opts, std::cerr);
  if (compare->parsed()) return cli::cmd_compare(scenario, out_dir, opts, std::cout, std::cerr);
  return cli::cmd_dump_costmap(scenario, method, t, output, opts, std::cerr);
}
