#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace strata {

struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  std::vector<std::string> notes;  // tables and other non-asserted output

  bool passed() const;
};

/// Suite names accepted by verify(), "all" excluded.
const std::vector<std::string>& verify_suites();

/// Runs one suite or "all".  Unknown names throw std::invalid_argument.
VerifyReport verify(const std::string& suite, std::uint64_t seed = 0);

}  // namespace strata
