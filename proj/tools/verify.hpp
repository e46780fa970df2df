#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sqt/origami.hpp"

namespace sqt::io {

struct CheckResult {
  std::string name;
  bool passed;
  bool skipped;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t orbit_cap = 1'000'000;
  std::size_t coset_cap = 1'000'000;
};

std::vector<CheckResult> verify_suite(const Origami& o, const VerifyOptions& opt = {});
void print_table(const std::vector<CheckResult>& rs, std::ostream& os);

}  // namespace sqt::io
