#pragma once

#include "toricgk/linalg.hpp"

#include <string>
#include <vector>

namespace toricgk {

struct Check {
  std::string name;
  bool pass = false;
  double residual = 0;  // worst value seen, meaning depends on the check
  Vec location;         // worst point, empty when not pointwise
  std::string detail;
};

class ValidationReport {
 public:
  void add(Check c) { checks_.push_back(std::move(c)); }
  void add(std::string name, bool pass, double residual, Vec location = {}, std::string detail = {});
  void merge(const ValidationReport& other, const std::string& prefix = {});

  // Keeps one line per name across repeated point reports: pass is the
  // conjunction, residual/location follow the worst sample. Checks whose
  // detail starts with "min" treat smaller residuals as worse.
  void fold_worst(const ValidationReport& other);
  bool pass() const;
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;

  // One line per check:
  //   PASS|FAIL <name> residual=<r> at=[x1,x2,..] <detail>
  std::string to_text() const;

 private:
  std::vector<Check> checks_;
};

// Tracks the worst value of a residual over sample points.
struct WorstTracker {
  double value;
  Vec location;
  bool maximize = true;
  explicit WorstTracker(bool maximize_ = true);
  void update(double v, const Vec& x);
};

std::string format_double(double v);
std::string format_vec(const Vec& v);

}  // namespace toricgk
