#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace bellq::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

struct SampleOptions {
  std::size_t d = 3;
  std::size_t n = 100000;
  std::uint64_t seed = 42;
  std::optional<std::size_t> zero_coset;
  std::optional<std::string> out;
  std::string format = "json";
  unsigned threads = 0;
};

struct VerifyOptions {
  std::size_t d = 3;
  std::size_t n = 10000;
  std::uint64_t seed = 42;
};

int cmd_classify(const std::string& path, bool oracle, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err);
int cmd_witness(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_striations(std::size_t d, std::ostream& out, std::ostream& err);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bellq::cli
