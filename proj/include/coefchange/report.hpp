#pragma once

#include <string>
#include <vector>

namespace coefchange {

/// One checked clause of a verification.
struct Clause {
  std::string name;
  bool ok = true;
  std::string detail;
};

/// Report-style verification result: every clause is recorded, failed or not.
struct VerificationReport {
  std::vector<Clause> clauses;

  void add(std::string name, bool ok, std::string detail = {}) {
    clauses.push_back({std::move(name), ok, std::move(detail)});
  }
  bool passed() const {
    for (const auto& c : clauses)
      if (!c.ok) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : clauses)
      if (!c.ok) out.push_back(c.detail.empty() ? c.name : c.name + ": " + c.detail);
    return out;
  }
  /// Prefixes every clause name and appends to this report.
  void merge(const VerificationReport& other, const std::string& prefix = {}) {
    for (const auto& c : other.clauses) clauses.push_back({prefix + c.name, c.ok, c.detail});
  }
};

}  // namespace coefchange
