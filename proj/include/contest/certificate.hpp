#pragma once

// Exact-integer certificate that the covariance-domination matrix M0 is
// positive semidefinite for concrete contest sizes: builds the cleared
// polynomial matrix, extracts every monomial coefficient matrix, matches it
// against the binomial closed forms, and certifies each block through the
// scalar-inequality reduction. All coefficient arithmetic is done in
// arbitrary-precision integers.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace contest {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Multivariate polynomial over a fixed variable count with exact integer
// coefficients; every variable appears to power at most 2. Exponent vectors
// are packed base-3 into the map key.
class SparsePoly {
 public:
  explicit SparsePoly(int n_vars) : n_vars_(n_vars) {}
  static SparsePoly constant(int n_vars, const mpz_class& value);
  static SparsePoly variable(int n_vars, int index);

  int n_vars() const { return n_vars_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }
  int total_degree() const;
  mpz_class coeff(std::span<const int> exponents) const;
  mpz_class coeff_key(std::uint64_t key) const;
  double eval(std::span<const double> point) const;
  const std::map<std::uint64_t, mpz_class>& terms() const { return terms_; }

  SparsePoly& operator+=(const SparsePoly& rhs);
  SparsePoly& operator-=(const SparsePoly& rhs);
  friend SparsePoly operator+(SparsePoly lhs, const SparsePoly& rhs) { return lhs += rhs; }
  friend SparsePoly operator-(SparsePoly lhs, const SparsePoly& rhs) { return lhs -= rhs; }
  friend SparsePoly operator*(const SparsePoly& lhs, const SparsePoly& rhs);
  SparsePoly& operator*=(const mpz_class& scalar);
  bool operator==(const SparsePoly& rhs) const = default;

  static std::uint64_t pack(std::span<const int> exponents);
  static std::vector<int> unpack(std::uint64_t key, int n_vars);

 private:
  void add_term(std::uint64_t key, const mpz_class& value);

  int n_vars_;
  std::map<std::uint64_t, mpz_class> terms_;
};

// Symmetric matrix of polynomials; per-variable degree of every entry is at
// most 2 and total degree at most 2N+2.
struct PolynomialMatrix {
  int n = 0;
  std::vector<std::vector<SparsePoly>> entries;
};

// One monomial coefficient matrix in its two-block five-value form. S1 holds
// the exponent-1 variables (b of them), S2 the exponent-2 variables (a of
// them); L = N - a.
struct CoefficientBlock {
  int b = 0;
  int a = 0;
  int l = 0;
  mpz_class d1, d2, c11, c12, c22;
};

struct ExtractedBlock {
  std::vector<int> alpha;  // representative exponent pattern
  CoefficientBlock block;
  int multiplicity = 0;  // number of exponent patterns in this (b, a) class
};

struct BlockPsdReport {
  bool diag1_ok = true;    // d1 - c11 >= 0 (when the S1 block is present)
  bool diag2_ok = true;    // d2 - c22 >= 0 (when the S2 block is present)
  bool coupling_ok = true; // (d1+(b-1)c11)(d2+(a-1)c22) >= a b c12^2
  double min_eigenvalue = 0.0;  // redundant floating-point check
  bool eig_ok = true;
  bool pass = false;
};

struct BlockClassReport {
  std::vector<int> alpha;
  int b = 0;
  int a = 0;
  int multiplicity = 0;
  long d1 = 0, d2 = 0, c11 = 0, c12 = 0, c22 = 0;
  bool matches_closed_form = false;
  bool psd = false;
};

struct CertifyReport {
  int n_level = 0;
  int alpha_count = 0;  // nonzero exponent patterns before canonicalization
  std::vector<BlockClassReport> classes;
  bool pass = false;
  std::string failure;  // empty when pass
};

// Elementary symmetric polynomial e_k over the given variables, by the
// incremental product recurrence; e_0 = 1 and e_k = 0 outside 0..|vars|.
SparsePoly elem_sym(int n_vars, std::span<const int> vars, int k);

// Phi_m = sum of e_0..e_m over the given variables; the zero polynomial for
// m < 0.
SparsePoly phi_poly(int n_vars, std::span<const int> vars, int m);

// Turan defect T_N = Phi_{N-1}^2 - Phi_{N-2} Phi_N over the given variables.
SparsePoly turan_defect(int n_vars, std::span<const int> vars, int n_level);

// The cleared polynomial matrix for n = 2N+1 battles:
//   diagonal  phi_t e_N(phi_-t) (2 Phi_N(phi) + phi_t e_N(phi_-t))
//   off-diag  phi_t phi_s (1+phi_t)(1+phi_s) T_N(phi_-{t,s})
// Symbolic budget: n <= 9.
PolynomialMatrix build_tilde_m(int n);

// Collects the coefficient matrix of every contributing exponent pattern,
// verifies the S1-union-S2 support and the five-value pattern, and collapses
// permutation-equivalent patterns onto one block per (b, a). Throws
// CertificateError on any structural violation.
std::vector<ExtractedBlock> extract_blocks(const PolynomialMatrix& pm);

// Binomial closed forms for (d1, d2, c11, c12, c22), with out-of-range
// binomials zero and negative differences clamped to zero.
CoefficientBlock closed_form_block(int b, int a, int n_level);

// Exact scalar PSD conditions for the two-block form, plus a redundant dense
// eigenvalue check in floating point.
BlockPsdReport check_block_psd(const CoefficientBlock& block);

// Full certificate for one contest size: build, extract, match every block
// against its closed form, and check PSD for all of them. 1 <= N <= 4.
CertifyReport certify(int n_level);

}  // namespace contest
