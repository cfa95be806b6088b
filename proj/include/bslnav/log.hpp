#pragma once

#include <iostream>
#include <sstream>
#include <string_view>

namespace bslnav::log
{

enum class Level
{
  Error = 0,
  Info = 1,
  Debug = 2
};

/// Threshold from BSLNAV_LOG (error|info|debug); defaults to error.
Level threshold();

template <typename... Args>
void write(Level level, const Args&... args)
{
  if (static_cast<int>(level) > static_cast<int>(threshold())) return;
  std::ostringstream os;
  static constexpr std::string_view kTags[] = {"error", "info", "debug"};
  os << "[bslnav " << kTags[static_cast<int>(level)] << "] ";
  (os << ... << args);
  os << '\n';
  std::cerr << os.str();
}

template <typename... Args>
void error(const Args&... args) { write(Level::Error, args...); }
template <typename... Args>
void info(const Args&... args) { write(Level::Info, args...); }
template <typename... Args>
void debug(const Args&... args) { write(Level::Debug, args...); }

}  // namespace bslnav::log
