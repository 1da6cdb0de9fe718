#pragma once

#include <string>
#include <utility>
#include <vector>

namespace avmod {

/// Outcome of one exact identity check. `witness` holds the serialized
/// nonzero difference and is empty exactly when the check passed.
struct VerificationReport {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> inputs;
  bool passed = true;
  std::vector<std::string> witness;
  std::string note;

  void fail_with(std::vector<std::string> w, std::string why = {}) {
    passed = false;
    witness = std::move(w);
    if (!why.empty()) note = std::move(why);
  }
};

}  // namespace avmod
