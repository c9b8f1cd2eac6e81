#pragma once

#include <string>
#include <vector>

namespace kirby::report {

// Outcome of one verification item: machine-checked (pass/fail) or imported
// as an assumption.  The split is the engine's core honesty guarantee.
enum class Outcome { Pass, Fail, Assumed };

struct Item {
  Outcome outcome = Outcome::Pass;
  std::string what;    // the claim that was examined
  std::string detail;  // failure diagnostics or assumption text
};

struct CheckReport {
  std::vector<Item> items;

  void pass(const std::string& what, const std::string& detail = "") {
    items.push_back({Outcome::Pass, what, detail});
  }
  void fail(const std::string& what, const std::string& detail = "") {
    items.push_back({Outcome::Fail, what, detail});
  }
  void assume(const std::string& what, const std::string& detail = "") {
    items.push_back({Outcome::Assumed, what, detail});
  }

  int failures() const {
    int n = 0;
    for (const auto& i : items)
      if (i.outcome == Outcome::Fail) ++n;
    return n;
  }
  int assumptions() const {
    int n = 0;
    for (const auto& i : items)
      if (i.outcome == Outcome::Assumed) ++n;
    return n;
  }
  int checks() const { return static_cast<int>(items.size()) - assumptions(); }
  bool passed() const { return failures() == 0; }
  const Item* first_failure() const {
    for (const auto& i : items)
      if (i.outcome == Outcome::Fail) return &i;
    return nullptr;
  }
};

}  // namespace kirby::report
