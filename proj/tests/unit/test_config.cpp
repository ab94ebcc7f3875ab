#include "toricgk/commands.hpp"
#include "toricgk/config.hpp"
#include "toricgk/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

using namespace toricgk;

namespace {
const char* kSquare = R"({
  "polytope": { "dim": 2, "facets": [
    { "normal": [1, 0], "offset": 0 }, { "normal": [0, 1], "offset": 0 },
    { "normal": [-1, 0], "offset": -0.5 }, { "normal": [0, -1], "offset": -0.5 } ] },
  "potential": { "canonical": true },
  "C": [0.5], "F": [F_VALUE],
  "grid": { "resolution": 6, "margin": 0.02 }
})";

std::string square(double f) {
  std::string s = kSquare;
  s.replace(s.find("F_VALUE"), 7, std::to_string(f));
  return s;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Config);
    return e.what();
  }
  return {};
}
}  // namespace

TEST(Config, Defaults) {
  auto cfg = parse_config(square(4));
  EXPECT_EQ(cfg.seed, 0u);
  EXPECT_EQ(cfg.grid_resolution, 6);
  EXPECT_EQ(cfg.tol.identity_residual, 1e-10);
  EXPECT_TRUE(cfg.lift.minimal);
  EXPECT_EQ(cfg.F(0, 1), 4.0);
  EXPECT_EQ(cfg.C(0, 1), 0.5);
  EXPECT_EQ(cfg.t_values.size(), 11u);
}

TEST(Config, FieldPaths) {
  EXPECT_NE(config_error(R"({"polytope": {"dim": 2}})").find("/polytope/facets"), std::string::npos);
  EXPECT_NE(config_error(R"({"polytope": {"dim": 1, "facets": [{"normal": [1, 2], "offset": 0}]}})")
                .find("/polytope/facets/0/normal"),
            std::string::npos);
  std::string bad_f = square(4);
  bad_f.replace(bad_f.find("\"F\": [4"), 7, "\"F\": [4, 1");
  EXPECT_NE(config_error(bad_f).find("/F"), std::string::npos);
  std::string bad_tol = square(4);
  bad_tol.insert(bad_tol.rfind('}'), R"(, "tolerances": {"nijenhuis": -1})");
  EXPECT_NE(config_error(bad_tol).find("/tolerances/nijenhuis"), std::string::npos);
  std::string bad_pow = square(4);
  bad_pow.replace(bad_pow.find("\"canonical\": true"), 17,
                  R"("canonical": true, "correction": {"poly": [{"coef": 1, "powers": [3, 2]}]})");
  EXPECT_NE(config_error(bad_pow).find("/potential/correction/poly/0/powers"), std::string::npos);
  EXPECT_NE(config_error("{ not json").find("invalid JSON"), std::string::npos);
}

TEST(Commands, ValidateExitStatus) {
  CommandOptions o;
  o.command = "validate";
  o.config_text = square(4);
  auto ok = execute(o);
  EXPECT_EQ(ok.status, 0) << ok.report.to_text();
  ASSERT_NE(ok.report.find("triple.xi_positive"), nullptr);
  o.config_text = square(9);
  auto bad = execute(o);
  EXPECT_EQ(bad.status, 1);
  const Check* c = bad.report.find("triple.cone_condition");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->pass);
  EXPECT_NEAR(c->location[0], 0.25, 1e-3);
  EXPECT_NEAR(c->location[1], 0.25, 1e-3);
}

TEST(Commands, BuildCsvDeterministic) {
  CommandOptions o;
  o.command = "build";
  o.config_text = square(4);
  auto a = execute(o), b = execute(o);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.artifact, b.artifact);
  EXPECT_EQ(a.artifact.substr(0, a.artifact.find('\n')), "x1,x2,frame,tensor,i,j,value");
  // 36 points, 3 frames, 14 tensors
  std::size_t lines = std::count(a.artifact.begin(), a.artifact.end(), '\n');
  std::size_t expected = 1 + 36 * 3 * (3 * 4 + 11 * 16);
  EXPECT_EQ(lines, expected);
}

TEST(Commands, ConfigErrorStatus) {
  CommandOptions o;
  o.command = "validate";
  o.config_text = "{\"polytope\": 3}";
  auto r = execute(o);
  EXPECT_EQ(r.status, 2);
  EXPECT_FALSE(r.report.pass());
}

TEST(Commands, TolOverride) {
  CommandOptions o;
  o.command = "validate";
  o.config_text = square(4);
  o.tol = {{"nijenhuis", 1e-12}};
  EXPECT_EQ(execute(o).status, 1);
  o.tol = {{"bogus", 1.0}};
  EXPECT_EQ(execute(o).status, 2);
}

TEST(Commands, SelftestAndExample) {
  CommandOptions s;
  s.command = "selftest";
  EXPECT_EQ(execute(s).status, 0);
  CommandOptions e;
  e.command = "example";
  e.c = 1;
  e.f = 4;
  e.grid = 5;
  EXPECT_EQ(execute(e).status, 0);
  e.example = "hirzebruch";
  EXPECT_EQ(execute(e).status, 2);
}
