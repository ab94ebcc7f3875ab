#pragma once

#include "toricgk/linalg.hpp"
#include "toricgk/report.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace toricgk {

struct CorpusOptions {
  int count = 1000;
  std::vector<int> dims{2, 3, 4, 6};
  double max_cond = 1e6;
  // fraction of entries built with a deliberately singular symmetric part
  double singular_sym_fraction = 0.05;
};

// Deterministic corpus of invertible matrices with entries in [-1, 1].
std::vector<Mat> invertible_corpus(std::uint64_t seed, const CorpusOptions& opts = {});

Mat random_spd(std::mt19937_64& rng, int n, double min_eig = 0.1);
Mat random_antisymmetric(std::mt19937_64& rng, int n, double scale = 1.0);

struct FactSuiteTolerances {
  double fact1 = 1e-10;
  double fact2 = 1e-8;
  double fact3 = 1e-10;
  double fact4 = 1e-9;
};

// Facts I-V over the corpus, one report line per fact.
ValidationReport run_matrix_fact_suite(std::uint64_t seed, const FactSuiteTolerances& tol = {});

}  // namespace toricgk
