#include "toricgk/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace toricgk {

void ValidationReport::add(std::string name, bool pass, double residual, Vec location, std::string detail) {
  checks_.push_back(Check{std::move(name), pass, residual, std::move(location), std::move(detail)});
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (auto c : other.checks_) {
    if (!prefix.empty()) c.name = prefix + "." + c.name;
    checks_.push_back(std::move(c));
  }
}

void ValidationReport::fold_worst(const ValidationReport& other) {
  for (const auto& c : other.checks_) {
    Check* cur = nullptr;
    for (auto& k : checks_)
      if (k.name == c.name) cur = &k;
    if (!cur) {
      checks_.push_back(c);
      continue;
    }
    const bool lower = c.detail.rfind("min", 0) == 0;
    bool worse = lower ? c.residual < cur->residual : c.residual > cur->residual;
    if (std::isnan(c.residual)) worse = true;
    if (cur->pass && !c.pass) worse = true;
    if (!cur->pass && c.pass) worse = false;
    if (worse) {
      cur->residual = c.residual;
      cur->location = c.location;
      cur->detail = c.detail;
    }
    cur->pass = cur->pass && c.pass;
  }
}

bool ValidationReport::pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_vec(const Vec& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s + "]";
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", c.residual);
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " residual=" << buf;
    if (c.location.size() > 0) os << " at=" << format_vec(c.location);
    if (!c.detail.empty()) os << " " << c.detail;
    os << "\n";
  }
  return os.str();
}

WorstTracker::WorstTracker(bool maximize_)
    : value(maximize_ ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity()),
      maximize(maximize_) {}

void WorstTracker::update(double v, const Vec& x) {
  bool worse = maximize ? (v > value || std::isnan(v)) : (v < value || std::isnan(v));
  if (std::isnan(value)) return;
  if (worse) {
    value = v;
    location = x;
  }
}

}  // namespace toricgk
