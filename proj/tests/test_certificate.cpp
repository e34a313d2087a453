#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "contest/certificate.hpp"
#include "contest/verification.hpp"

using namespace contest;

namespace {

std::vector<int> range_vars(int n) {
  std::vector<int> vars(n);
  for (int i = 0; i < n; ++i) vars[i] = i;
  return vars;
}

long binom_l(long m, long r) {
  if (m < 0 || r < 0 || r > m) return 0;
  long out = 1;
  for (long i = 1; i <= r; ++i) out = out * (m - r + i) / i;
  return out;
}

const ExtractedBlock* find_class(const std::vector<ExtractedBlock>& blocks, int b, int a) {
  for (const ExtractedBlock& e : blocks)
    if (e.block.b == b && e.block.a == a) return &e;
  return nullptr;
}

// Numeric Phi_m: sum of elementary symmetric values of degree 0..m.
double phi_value(const std::vector<double>& values, int m) {
  if (m < 0) return 0.0;
  const int cap = std::min<int>(m, static_cast<int>(values.size()));
  std::vector<double> e(cap + 1, 0.0);
  e[0] = 1.0;
  int used = 0;
  for (double value : values) {
    ++used;
    for (int j = std::min(cap, used); j >= 1; --j) e[j] += e[j - 1] * value;
  }
  double total = 0.0;
  for (double v : e) total += v;
  return total;
}

}  // namespace

TEST_CASE("elementary symmetric polynomials") {
  const std::vector<int> vars = range_vars(3);
  CHECK(elem_sym(3, vars, 0) == SparsePoly::constant(3, 1));

  const SparsePoly e2 = elem_sym(3, vars, 2);
  CHECK(e2.term_count() == 3);
  CHECK(e2.coeff(std::vector<int>{1, 1, 0}) == 1);
  CHECK(e2.coeff(std::vector<int>{1, 0, 1}) == 1);
  CHECK(e2.coeff(std::vector<int>{0, 1, 1}) == 1);

  CHECK(elem_sym(3, vars, 4).is_zero());
  CHECK(elem_sym(3, vars, -1).is_zero());
}

TEST_CASE("phi polynomials and the splitting identity") {
  CHECK(phi_poly(2, range_vars(2), -1).is_zero());

  const SparsePoly phi1 = phi_poly(2, range_vars(2), 1);
  CHECK(phi1.term_count() == 3);
  CHECK(phi1.coeff(std::vector<int>{0, 0}) == 1);
  CHECK(phi1.coeff(std::vector<int>{1, 0}) == 1);
  CHECK(phi1.coeff(std::vector<int>{0, 1}) == 1);

  // Phi_N(phi) = Phi_N(phi_-t) + phi_t Phi_{N-1}(phi_-t) as polynomials.
  for (int n : {3, 5, 7}) {
    for (int level = 1; level <= n / 2; ++level) {
      const std::vector<int> all = range_vars(n);
      for (int t = 0; t < n; ++t) {
        std::vector<int> rest;
        for (int v : all)
          if (v != t) rest.push_back(v);
        const SparsePoly lhs = phi_poly(n, all, level);
        const SparsePoly rhs = phi_poly(n, rest, level) +
                               SparsePoly::variable(n, t) * phi_poly(n, rest, level - 1);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("Turan defect basics") {
  // N = 1 over one variable: Phi_0^2 - Phi_-1 Phi_1 = 1.
  CHECK(turan_defect(1, range_vars(1), 1) == SparsePoly::constant(1, 1));

  // N = 2 over three variables: e_1 + e_1^2 - e_2.
  const std::vector<int> vars = range_vars(3);
  const SparsePoly e1 = elem_sym(3, vars, 1);
  CHECK(turan_defect(3, vars, 2) == e1 + e1 * e1 - elem_sym(3, vars, 2));
  CHECK(turan_defect(3, vars, 2).coeff(std::vector<int>{1, 1, 0}) == 1);
}

TEST_CASE("Turan coefficient law") {
  std::mt19937_64 rng(97);
  const int n_vars = 7;
  for (int trial = 0; trial < 200; ++trial) {
    const int level = 1 + static_cast<int>(rng() % 4);       // N
    const int squared = static_cast<int>(rng() % 3);         // a'
    const int single = static_cast<int>(rng() % 5);          // r
    if (squared + single > n_vars) continue;
    const SparsePoly defect = turan_defect(n_vars, range_vars(n_vars), level);
    std::vector<int> exponents(n_vars, 0);
    for (int i = 0; i < squared; ++i) exponents[i] = 2;
    for (int i = 0; i < single; ++i) exponents[squared + i] = 1;
    const int residual = level - squared;  // L'
    const long expected =
        std::max<long>(0, binom_l(single, residual - 1) - binom_l(single, residual));
    CHECK(defect.coeff(exponents) == expected);
  }
}

TEST_CASE("polynomial product guards the per-variable degree cap") {
  const SparsePoly phi = SparsePoly::variable(2, 0);
  const SparsePoly square = phi * phi;
  CHECK(square.coeff(std::vector<int>{2, 0}) == 1);
  CHECK_THROWS_AS(square * phi, CertificateError);
}

TEST_CASE("building the cleared matrix") {
  CHECK_THROWS_AS(build_tilde_m(4), CertificateError);
  CHECK_THROWS_AS(build_tilde_m(11), CertificateError);

  const PolynomialMatrix pm = build_tilde_m(3);
  const std::vector<double> ones{1.0, 1.0, 1.0};
  CHECK(pm.entries[0][0].eval(ones) == doctest::Approx(20.0).epsilon(1e-15));

  for (int n : {3, 5, 7}) {
    const PolynomialMatrix matrix = build_tilde_m(n);
    const int max_total = n + 1;  // 2N + 2
    for (int t = 0; t < n; ++t) {
      for (int s = 0; s < n; ++s) {
        CHECK(matrix.entries[t][s].total_degree() <= max_total);
        CHECK(matrix.entries[t][s] == matrix.entries[s][t]);
      }
    }
  }
}

TEST_CASE("cleared matrix agrees numerically with the enumeration moments") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> phi_dist(0.1, 4.0);
  for (int n : {3, 5, 7}) {
    const PolynomialMatrix pm = build_tilde_m(n);
    const int level = n / 2;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> phi(n), probs(n);
      for (int t = 0; t < n; ++t) {
        phi[t] = phi_dist(rng);
        probs[t] = 1.0 / (1.0 + phi[t]);
      }
      const ConditionalMoments cm = conditional_moments(probs);
      const double phi_full = phi_value(phi, level);

      for (int t = 0; t < n; ++t) {
        for (int s = 0; s < n; ++s) {
          const double m0_entry = (t == s ? cm.d(t) + cm.g(t) : 0.0) - cm.sigma_a(t, s);
          const double expected =
              phi_full * phi_full * (1.0 + phi[t]) * (1.0 + phi[s]) * m0_entry;
          const double got = pm.entries[t][s].eval(phi);
          CHECK(got == doctest::Approx(expected).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("extracted blocks for N = 1") {
  const std::vector<ExtractedBlock> blocks = extract_blocks(build_tilde_m(3));
  CHECK(blocks.size() == 5);

  const ExtractedBlock* pure_s2 = find_class(blocks, 0, 2);
  REQUIRE(pure_s2 != nullptr);
  CHECK(pure_s2->block.d2 == 1);
  CHECK(pure_s2->block.c22 == 1);  // the all-ones block J_2

  const ExtractedBlock* pair = find_class(blocks, 2, 0);
  REQUIRE(pair != nullptr);
  CHECK(pair->block.d1 == 2);
  CHECK(pair->block.c11 == 1);

  const ExtractedBlock* triple = find_class(blocks, 3, 0);
  REQUIRE(triple != nullptr);
  CHECK(triple->block.d1 == 4);
  CHECK(triple->block.c11 == 0);

  const ExtractedBlock* mixed = find_class(blocks, 1, 1);
  REQUIRE(mixed != nullptr);
  CHECK(mixed->block.d1 == 2);
  CHECK(mixed->block.d2 == 2);
  CHECK(mixed->block.c12 == 1);

  const ExtractedBlock* heavy = find_class(blocks, 2, 1);
  REQUIRE(heavy != nullptr);
  CHECK(heavy->block.d1 == 0);
  CHECK(heavy->block.d2 == 2);
  CHECK(heavy->block.c12 == 0);

  for (const ExtractedBlock& e : blocks) CHECK(e.block.b + 2 * e.block.a <= 4);
}

TEST_CASE("extracted block for the N = 2 pattern with b = 3, a = 1") {
  const std::vector<ExtractedBlock> blocks = extract_blocks(build_tilde_m(5));
  const ExtractedBlock* cls = find_class(blocks, 3, 1);
  REQUIRE(cls != nullptr);
  CHECK(cls->block.d1 == 4);
  CHECK(cls->block.d2 == 6);
  CHECK(cls->block.c11 == 0);
  CHECK(cls->block.c12 == 1);
  // A single S2 index leaves no c22 entry to extract; the closed form
  // completes the five-tuple (4, 6, 0, 1, 2).
  CHECK(closed_form_block(3, 1, 2).c22 == 2);
  for (const ExtractedBlock& e : blocks) CHECK(e.block.b + 2 * e.block.a <= 6);
}

TEST_CASE("closed-form blocks") {
  for (int level : {1, 2, 3}) {
    const CoefficientBlock degenerate = closed_form_block(0, level + 1, level);
    CHECK(degenerate.d2 == 1);
    CHECK(degenerate.c22 == 1);
  }

  const CoefficientBlock cls = closed_form_block(3, 1, 2);
  CHECK(cls.d1 == 4);
  CHECK(cls.d2 == 6);
  CHECK(cls.c11 == 0);
  CHECK(cls.c12 == 1);
  CHECK(cls.c22 == 2);

  // b = 2L + 2 decouples the two blocks.
  for (int level : {1, 2, 3}) {
    for (int a = 0; a <= level; ++a) {
      const int l = level - a;
      const CoefficientBlock boundary = closed_form_block(2 * l + 2, a, level);
      CHECK(boundary.c12 == 0);
    }
  }
}

TEST_CASE("scalar PSD reduction") {
  const BlockPsdReport derived = check_block_psd(closed_form_block(3, 1, 2));
  CHECK(derived.diag1_ok);
  CHECK(derived.diag2_ok);
  CHECK(derived.coupling_ok);  // 4 * 6 >= 3 * 1 * 1
  CHECK(derived.pass);

  CoefficientBlock ones;  // rank-one J_{N+1}
  ones.b = 0;
  ones.a = 3;
  ones.d2 = 1;
  ones.c22 = 1;
  CHECK(check_block_psd(ones).pass);

  CoefficientBlock zero;
  zero.b = 2;
  zero.a = 1;
  CHECK(check_block_psd(zero).pass);

  CoefficientBlock broken;
  broken.b = 2;
  broken.a = 0;
  broken.d1 = 1;
  broken.c11 = 5;
  CHECK_FALSE(check_block_psd(broken).pass);
}

TEST_CASE("certify the desk-scale sizes") {
  for (int level : {1, 2, 3}) {
    const CertifyReport report = certify(level);
    CHECK(report.pass);
    CHECK(report.failure.empty());
    for (const BlockClassReport& cls : report.classes) {
      CHECK(cls.matches_closed_form);
      CHECK(cls.psd);
    }
  }
  CHECK_THROWS_AS(certify(0), CertificateError);
  CHECK_THROWS_AS(certify(5), CertificateError);
}

TEST_CASE("certify the largest supported size") {
  CHECK(certify(4).pass);
}

TEST_CASE("quadratic form of the cleared matrix is nonnegative on the orthant") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> phi_dist(0.05, 5.0);
  std::uniform_real_distribution<double> dir(-1.0, 1.0);
  for (int n : {3, 5}) {
    const PolynomialMatrix pm = build_tilde_m(n);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> phi(n);
      for (double& x : phi) x = phi_dist(rng);
      std::vector<double> v(n);
      for (double& x : v) x = dir(rng);
      double quad = 0.0;
      double scale = 0.0;
      for (int t = 0; t < n; ++t) {
        for (int s = 0; s < n; ++s) {
          const double entry = pm.entries[t][s].eval(phi);
          quad += v[t] * entry * v[s];
          scale += std::abs(v[t] * entry * v[s]);
        }
      }
      CHECK(quad >= -1e-12 * scale);
    }
  }
}
