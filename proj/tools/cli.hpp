#pragma once

// Command-line front end. run() never throws; it maps failures onto the
// exit codes below.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace opuc::cli {

enum ExitCode : int {
  kPass = 0,
  kAssertionFailed = 1,
  kUsage = 2,
  kIoError = 3,
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct RunConfig {
  std::string command;
  std::string kind;
  std::string weight;
  std::vector<int> n_list;     // sorted ascending, no duplicates
  std::vector<double> p_list;
  std::optional<double> alpha, epsilon, lambda, tol;
  std::vector<int> orders;  // j, l
  std::string mode;
  int grid = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format;
};

int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace opuc::cli
