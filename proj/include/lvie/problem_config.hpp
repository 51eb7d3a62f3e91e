#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lvie/problem.hpp"

namespace lvie {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Key-value problem description:
///
///   t0 = 0
///   T = 1
///   lambda = 1/4
///   a0 = "t^2+1"
///   kernel = "t-2*s^2"
///   f = "..."
///   exact = "cos(t)"                          # optional
///   load = { point = 3/10, coeff = "1-t^3" }  # repeated, one per load
///
/// Numeric values may be constant expressions such as 3/10.
Problem parse_problem_config(std::string_view text, std::string name = "config");
Problem load_problem_config(const std::filesystem::path& path);

}  // namespace lvie
