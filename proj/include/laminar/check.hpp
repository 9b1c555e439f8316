#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "laminar/serialize.hpp"

namespace laminar {

enum class Suite { All, Axioms, Invariance, Transversality, PantsLike, Coherence };

Suite parse_suite(std::string_view name);  // throws ParseError
const char* to_string(Suite s) noexcept;

struct CheckStatus {
  std::string name;
  std::string suite;
  std::size_t checked = 0;   // subjects examined; zero means skipped
  std::size_t failures = 0;
  std::optional<std::string> counterexample;  // the first failure
  double millis = 0;

  bool passed() const { return failures == 0; }
  bool skipped() const { return checked == 0; }
};

struct CheckSuiteResult {
  std::vector<CheckStatus> checks;

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
  std::string to_json() const;
};

// Checks run per suite:
//   axioms          nonempty, single_chart, unlinkedness (every lamination)
//   invariance      generator images of each chord lie in the next depth (collections)
//   transversality  no chord shared between two laminations (collections, or several files)
//   pants_like      common endpoints of two systems are declared cusps (collections)
//   coherence       interval-family round trip, declared chart; for collections also the
//                   stored chords and cusps against a fresh construction
// The cusp comparison uses the word ball of radius `cusp_radius`.
CheckSuiteResult run_checks(const std::vector<Document>& docs, Suite suite, int cusp_radius = 6);

}  // namespace laminar
