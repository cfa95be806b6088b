#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>

namespace bslnav::cli
{

enum ExitCode : int
{
  kOk = 0,
  kBadScenario = 2,
  kBadParameter = 3,
  kTimeOutOfRange = 4,
};

struct CommonOptions
{
  std::map<std::string, double> params;
  std::optional<double> timeout;
};

/// Parses "KEY=VALUE"; throws InvalidParameter.
std::pair<std::string, double> parse_param(const std::string& text);

int cmd_run(const std::filesystem::path& scenario, const std::string& method, const std::filesystem::path& out_dir,
            bool dump_costmaps, const CommonOptions& opts, std::ostream& err);

int cmd_compare(const std::filesystem::path& scenario, const std::filesystem::path& out_dir,
                const CommonOptions& opts, std::ostream& out, std::ostream& err);

int cmd_dump_costmap(const std::filesystem::path& scenario, const std::string& method, double t,
                     const std::filesystem::path& output, const CommonOptions& opts, std::ostream& err);

}  // namespace bslnav::cli
