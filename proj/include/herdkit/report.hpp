#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace herdkit {

// Where two sides of an identity first disagree: the domain basis tuple
// (lexicographically first), the output coordinate, and both values.
struct Witness {
  std::vector<std::size_t> input;
  std::size_t component = 0;
  std::string lhs;
  std::string rhs;
};

struct Check {
  std::string name;
  bool passed = true;
  std::optional<Witness> witness;  // present iff passed == false
};

// Ordered list of named axiom checks. Each axiom of an operation appears
// exactly once; failed checks carry the first failing witness.
struct CheckReport {
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  void pass(std::string name) { checks.push_back({std::move(name), true, std::nullopt}); }

  void fail(std::string name, Witness w) {
    checks.push_back({std::move(name), false, std::move(w)});
  }

  void add(std::string name, const std::optional<Witness>& w) {
    if (w)
      fail(std::move(name), *w);
    else
      pass(std::move(name));
  }

  // Appends another report's checks, optionally namespacing their names.
  void merge(const CheckReport& other, const std::string& prefix = "") {
    for (const auto& c : other.checks) {
      Check copy = c;
      copy.name = prefix.empty() ? c.name : prefix + "." + c.name;
      checks.push_back(std::move(copy));
    }
  }
};

}  // namespace herdkit
