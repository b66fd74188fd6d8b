#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wedgekit {

/// One named exact check, with a short description of what went wrong.
struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Structured pass/fail evidence for axiom, lemma and theorem checks.
struct VerificationReport {
  std::string subject;
  std::vector<CheckItem> checks;

  bool all_passed() const {
    for (const CheckItem& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  std::optional<CheckItem> first_failure() const {
    for (const CheckItem& c : checks) {
      if (!c.passed) return c;
    }
    return std::nullopt;
  }

  void add(std::string name, bool passed, std::string detail = "") {
    checks.push_back(CheckItem{std::move(name), passed, std::move(detail)});
  }

  void merge(const VerificationReport& other) {
    for (const CheckItem& c : other.checks) {
      CheckItem copy = c;
      if (!other.subject.empty()) copy.name = other.subject + ": " + copy.name;
      checks.push_back(std::move(copy));
    }
  }
};

}  // namespace wedgekit
