#include "toricgk/linalg_corpus.hpp"

#include <algorithm>
#include <cmath>

namespace toricgk {

namespace {

double cond2(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  return s[s.size() - 1] == 0.0 ? INFINITY : s[0] / s[s.size() - 1];
}

Mat uniform_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

// Symmetric part of rank n-1 plus a random antisymmetric part.
Mat singular_sym_part_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat v(n, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n - 1; ++j) v(i, j) = u(rng);
  Mat s = v * v.transpose() / static_cast<double>(n);
  Mat k = random_antisymmetric(rng, n, 0.5);
  Mat a = s + k;
  double m = max_abs(a);
  return m > 1.0 ? Mat(a / m) : a;
}

}  // namespace

Mat random_antisymmetric(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat k = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      k(i, j) = u(rng);
      k(j, i) = -k(i, j);
    }
  return k;
}

Mat random_spd(std::mt19937_64& rng, int n, double min_eig) {
  Mat a = uniform_matrix(rng, n);
  Mat s = a * a.transpose() + min_eig * Mat::Identity(n, n);
  return 0.5 * (s + s.transpose());
}

std::vector<Mat> invertible_corpus(std::uint64_t seed, const CorpusOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<Mat> out;
  out.reserve(opts.count);
  std::size_t k = 0;
  while (static_cast<int>(out.size()) < opts.count) {
    int n = opts.dims[k % opts.dims.size()];
    bool special = n % 2 == 0 && u01(rng) < opts.singular_sym_fraction;
    Mat a = special ? singular_sym_part_matrix(rng, n) : uniform_matrix(rng, n);
    if (cond2(a) <= opts.max_cond) {
      out.push_back(std::move(a));
      ++k;
    }
  }
  return out;
}

ValidationReport run_matrix_fact_suite(std::uint64_t seed, const FactSuiteTolerances& tol) {
  ValidationReport rep;
  auto corpus = invertible_corpus(seed);

  double f1 = 0, f3 = 0, f3tail = 0;
  int mismatched = 0, singular_count = 0;
  for (const auto& a : corpus) {
    auto r = verify_inverse_part_identities(a, tol.fact2);
    f1 = std::max({f1, r.fact1_left, r.fact1_right});
    f3 = std::max({f3, r.fact3_sym, r.fact3_anti});
    if (r.fact3_tail) f3tail = std::max(f3tail, *r.fact3_tail);
    if (r.sym_part_singular != r.inverse_sym_part_singular) ++mismatched;
    if (r.sym_part_singular) ++singular_count;
  }
  const std::string sz = "corpus=" + std::to_string(corpus.size());
  rep.add("fact1", f1 <= tol.fact1, f1, {}, sz);
  rep.add("fact2", mismatched == 0, mismatched, {},
          sz + " singular_sym_parts=" + std::to_string(singular_count));
  rep.add("fact3", std::max(f3, f3tail) <= tol.fact3, std::max(f3, f3tail), {}, sz);

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> pick(0, 3);
  const int dims[] = {2, 3, 4, 6};
  int fact4_fail = 0;
  double worst4 = INFINITY;
  for (int t = 0; t < 500; ++t) {
    int n = dims[pick(rng)];
    Mat b = random_spd(rng, n, 0.05);
    std::uniform_real_distribution<double> u(-1, 1);
    Mat v(n, 1 + t % n);
    for (int i = 0; i < v.rows(); ++i)
      for (int j = 0; j < v.cols(); ++j) v(i, j) = u(rng);
    Mat a = b + v * v.transpose();
    Mat d = b.inverse() - a.inverse();
    worst4 = std::min(worst4, smallest_eigenvalue(0.5 * (d + d.transpose())));
    if (!loewner_geq(a, b, tol.fact4) || !loewner_geq(b.inverse(), a.inverse(), tol.fact4)) ++fact4_fail;
  }
  rep.add("fact4", fact4_fail == 0, worst4, {}, "pairs=500 failures=" + std::to_string(fact4_fail));

  int fact5_fail = 0;
  double last = 0;
  for (int t = 0; t < 50; ++t) {
    int n = dims[t % 4];
    Mat a = random_spd(rng, n, t % 2 ? 0.05 : 0.0);
    if (t % 2 == 0) {
      // rank deficient PSD
      Eigen::SelfAdjointEigenSolver<Mat> es(a);
      Vec ev = es.eigenvalues();
      ev[0] = 0.0;
      a = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
      a = 0.5 * (a + a.transpose());
    }
    Mat e = random_spd(rng, n, 0.0);
    e /= e.norm();
    Mat sa = sqrt_spd(a);
    double prev = INFINITY;
    for (double delta : {1e-2, 1e-4, 1e-6}) {
      double d = (sqrt_spd(a + delta * e) - sa).norm();
      if (!(d < prev)) ++fact5_fail;
      prev = d;
    }
    last = std::max(last, prev);
  }
  rep.add("fact5", fact5_fail == 0 && last < 1e-2, last, {}, "probes=50 deltas=1e-2,1e-4,1e-6");
  return rep;
}

}  // namespace toricgk
