#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gact {

/// Raised on contract violations anywhere in the library (mismatched
/// contexts, malformed tables, hypothesis failures with no report channel).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One failed check with a human-readable witness.
struct CheckFailure {
  std::string check;
  std::string witness;
};

/// Validation outcome; empty failure list means the document is valid.
struct Report {
  std::vector<CheckFailure> failures;
  bool ok() const { return failures.empty(); }
  void fail(std::string check, std::string witness) {
    failures.push_back({std::move(check), std::move(witness)});
  }
  std::string summary() const {
    if (ok()) return "valid";
    std::string s;
    for (const auto& f : failures) {
      s += f.check;
      s += ": ";
      s += f.witness;
      s += "\n";
    }
    return s;
  }
};

}  // namespace gact
