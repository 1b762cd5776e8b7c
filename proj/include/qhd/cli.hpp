#pragma once

// Command-line front end. Subcommands:
//   dist <domain> <p1> <p2>
//   classify <domain> <matrix>
//   limits <domain> <gens> [--budget N] [--x0 P] [--epsilon E]
//   cone <domain>
//   horosphere <domain> <H> <p> <x> [--svg] [--leaves K] [--samples M]
//   orbit <domain> <gens> <x0> --len L
//   catalog list | check <id|all> [--base B] [--syndetic] | classify <domain>
//   verify prop76 [--trials N]
// Exit status: 0 success, 1 a check failed (report still written),
// 2 invalid input.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qhd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;

struct RunConfig {
  std::string command;
  std::vector<std::string> args;  // positional arguments after the command
  std::string output;             // file path; stdout when empty
  std::uint64_t seed = 0;
  int budget = 0;  // limits: orbit nodes (2000); catalog check: samples (1000)
  int len = 3;                    // orbit word length
  int trials = 100;               // verify prop76
  int leaves = 6;
  int samples = 200;
  double epsilon = 1e-6;          // limit-set boundary proximity
  bool svg = false;
  bool syndetic = false;
  std::string x0;                 // limits: start point, basepoint when empty
  std::string base;               // catalog check: placeholder base body
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv with CLI11 and calls run() on stdout / stderr.
int cli_main(int argc, char** argv);

}  // namespace qhd
