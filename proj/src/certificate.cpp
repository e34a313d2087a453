#include "contest/certificate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace contest {

namespace {

mpz_class binom(long m, long r) {
  if (m < 0 || r < 0 || r > m) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(r));
  return out;
}

mpz_class clamp_nonneg(mpz_class x) { return x < 0 ? mpz_class(0) : x; }

std::vector<int> all_but(int n, std::initializer_list<int> removed) {
  std::vector<int> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) out.push_back(i);
  return out;
}

std::uint64_t pow3(int n) {
  std::uint64_t out = 1;
  for (int i = 0; i < n; ++i) out *= 3;
  return out;
}

}  // namespace

std::uint64_t SparsePoly::pack(std::span<const int> exponents) {
  std::uint64_t key = 0;
  std::uint64_t digit = 1;
  for (int e : exponents) {
    key += static_cast<std::uint64_t>(e) * digit;
    digit *= 3;
  }
  return key;
}

std::vector<int> SparsePoly::unpack(std::uint64_t key, int n_vars) {
  std::vector<int> exps(n_vars);
  for (int i = 0; i < n_vars; ++i) {
    exps[i] = static_cast<int>(key % 3);
    key /= 3;
  }
  return exps;
}

SparsePoly SparsePoly::constant(int n_vars, const mpz_class& value) {
  SparsePoly out(n_vars);
  if (value != 0) out.terms_[0] = value;
  return out;
}

SparsePoly SparsePoly::variable(int n_vars, int index) {
  SparsePoly out(n_vars);
  std::uint64_t key = 1;
  for (int i = 0; i < index; ++i) key *= 3;
  out.terms_[key] = 1;
  return out;
}

int SparsePoly::total_degree() const {
  int best = 0;
  for (const auto& [key, value] : terms_) {
    int deg = 0;
    for (int e : unpack(key, n_vars_)) deg += e;
    best = std::max(best, deg);
  }
  return best;
}

mpz_class SparsePoly::coeff(std::span<const int> exponents) const { return coeff_key(pack(exponents)); }

mpz_class SparsePoly::coeff_key(std::uint64_t key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

double SparsePoly::eval(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& [key, value] : terms_) {
    double term = value.get_d();
    std::uint64_t k = key;
    for (int i = 0; i < n_vars_; ++i) {
      const int e = static_cast<int>(k % 3);
      k /= 3;
      for (int j = 0; j < e; ++j) term *= point[i];
    }
    total += term;
  }
  return total;
}

void SparsePoly::add_term(std::uint64_t key, const mpz_class& value) {
  auto [it, inserted] = terms_.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& rhs) {
  for (const auto& [key, value] : rhs.terms_) add_term(key, value);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& rhs) {
  for (const auto& [key, value] : rhs.terms_) add_term(key, -value);
  return *this;
}

SparsePoly operator*(const SparsePoly& lhs, const SparsePoly& rhs) {
  SparsePoly out(lhs.n_vars_);
  for (const auto& [lk, lv] : lhs.terms_) {
    const std::vector<int> le = SparsePoly::unpack(lk, lhs.n_vars_);
    for (const auto& [rk, rv] : rhs.terms_) {
      const std::vector<int> re = SparsePoly::unpack(rk, lhs.n_vars_);
      std::uint64_t key = 0;
      std::uint64_t digit = 1;
      for (int i = 0; i < lhs.n_vars_; ++i) {
        const int e = le[i] + re[i];
        if (e > 2) throw CertificateError("per-variable degree above 2 in polynomial product");
        key += static_cast<std::uint64_t>(e) * digit;
        digit *= 3;
      }
      out.add_term(key, lv * rv);
    }
  }
  return out;
}

SparsePoly& SparsePoly::operator*=(const mpz_class& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, value] : terms_) value *= scalar;
  return *this;
}

SparsePoly elem_sym(int n_vars, std::span<const int> vars, int k) {
  if (k < 0 || k > static_cast<int>(vars.size())) return SparsePoly(n_vars);
  std::vector<SparsePoly> e(k + 1, SparsePoly(n_vars));
  e[0] = SparsePoly::constant(n_vars, 1);
  int used = 0;
  for (int v : vars) {
    ++used;
    const SparsePoly phi = SparsePoly::variable(n_vars, v);
    for (int j = std::min(k, used); j >= 1; --j) e[j] += e[j - 1] * phi;
  }
  return e[k];
}

SparsePoly phi_poly(int n_vars, std::span<const int> vars, int m) {
  SparsePoly out(n_vars);
  for (int k = 0; k <= std::min<int>(m, static_cast<int>(vars.size())); ++k)
    out += elem_sym(n_vars, vars, k);
  return out;
}

SparsePoly turan_defect(int n_vars, std::span<const int> vars, int n_level) {
  const SparsePoly lower = phi_poly(n_vars, vars, n_level - 1);
  return lower * lower - phi_poly(n_vars, vars, n_level - 2) * phi_poly(n_vars, vars, n_level);
}

PolynomialMatrix build_tilde_m(int n) {
  if (n < 3 || n % 2 == 0) throw CertificateError("battle count must be odd and at least 3");
  if (n > 9) throw CertificateError("symbolic budget is 9 battles");
  const int n_level = n / 2;

  const std::vector<int> all = all_but(n, {});
  const SparsePoly phi_full = phi_poly(n, all, n_level);

  PolynomialMatrix pm;
  pm.n = n;
  pm.entries.assign(n, std::vector<SparsePoly>(n, SparsePoly(n)));

  for (int t = 0; t < n; ++t) {
    const std::vector<int> rest = all_but(n, {t});
    SparsePoly leading = elem_sym(n, rest, n_level) * SparsePoly::variable(n, t);
    SparsePoly bracket = phi_full;
    bracket *= 2;
    bracket += leading;
    pm.entries[t][t] = leading * bracket;
  }
  for (int t = 0; t < n; ++t) {
    for (int s = t + 1; s < n; ++s) {
      const std::vector<int> rest = all_but(n, {t, s});
      const SparsePoly one = SparsePoly::constant(n, 1);
      const SparsePoly prefix = SparsePoly::variable(n, t) * SparsePoly::variable(n, s) *
                                (one + SparsePoly::variable(n, t)) *
                                (one + SparsePoly::variable(n, s));
      SparsePoly entry = prefix * turan_defect(n, rest, n_level);
      pm.entries[t][s] = entry;
      pm.entries[s][t] = std::move(entry);
    }
  }
  return pm;
}

std::vector<ExtractedBlock> extract_blocks(const PolynomialMatrix& pm) {
  const int n = pm.n;
  const std::uint64_t patterns = pow3(n);
  std::map<std::pair<int, int>, ExtractedBlock> classes;

  std::vector<std::vector<mpz_class>> c(n, std::vector<mpz_class>(n));
  for (std::uint64_t key = 0; key < patterns; ++key) {
    bool any = false;
    for (int t = 0; t < n; ++t) {
      for (int s = t; s < n; ++s) {
        c[t][s] = pm.entries[t][s].coeff_key(key);
        c[s][t] = c[t][s];
        if (c[t][s] != 0) any = true;
      }
    }
    if (!any) continue;

    const std::vector<int> alpha = SparsePoly::unpack(key, n);
    std::vector<int> s1, s2;
    for (int t = 0; t < n; ++t) {
      if (alpha[t] == 1) s1.push_back(t);
      if (alpha[t] == 2) s2.push_back(t);
    }
    auto describe = [&alpha]() {
      std::string out = "alpha=(";
      for (size_t i = 0; i < alpha.size(); ++i)
        out += (i ? "," : "") + std::to_string(alpha[i]);
      return out + ")";
    };

    // Support: rows and columns of exponent-0 variables must vanish.
    for (int t = 0; t < n; ++t)
      for (int s = 0; s < n; ++s)
        if ((alpha[t] == 0 || alpha[s] == 0) && c[t][s] != 0)
          throw CertificateError("coefficient outside S1 u S2 support at " + describe());

    // Five-value pattern across index-pair types.
    CoefficientBlock block;
    block.b = static_cast<int>(s1.size());
    block.a = static_cast<int>(s2.size());
    block.l = pm.n / 2 - block.a;
    auto uniform = [&](const std::vector<int>& rows, const std::vector<int>& cols, bool diagonal,
                       mpz_class& slot, const char* what) {
      bool seeded = false;
      for (int t : rows) {
        for (int s : cols) {
          if (diagonal != (t == s)) continue;
          if (!seeded) {
            slot = c[t][s];
            seeded = true;
          } else if (c[t][s] != slot) {
            throw CertificateError(std::string("five-value pattern broken for ") + what + " at " +
                                   describe());
          }
        }
      }
    };
    uniform(s1, s1, true, block.d1, "d1");
    uniform(s1, s1, false, block.c11, "c11");
    uniform(s2, s2, true, block.d2, "d2");
    uniform(s2, s2, false, block.c22, "c22");
    uniform(s1, s2, false, block.c12, "c12");

    auto [it, inserted] =
        classes.try_emplace({block.b, block.a}, ExtractedBlock{alpha, block, 1});
    if (!inserted) {
      const CoefficientBlock& seen = it->second.block;
      if (seen.d1 != block.d1 || seen.d2 != block.d2 || seen.c11 != block.c11 ||
          seen.c12 != block.c12 || seen.c22 != block.c22)
        throw CertificateError("permutation-equivalent patterns disagree at " + describe());
      ++it->second.multiplicity;
    }
  }

  std::vector<ExtractedBlock> out;
  out.reserve(classes.size());
  for (auto& [key, value] : classes) out.push_back(std::move(value));
  return out;
}

CoefficientBlock closed_form_block(int b, int a, int n_level) {
  const int l = n_level - a;
  CoefficientBlock block;
  block.b = b;
  block.a = a;
  block.l = l;
  block.d1 = b - 1 <= 2 * l ? mpz_class(2 * binom(b - 1, l)) : mpz_class(0);
  block.d2 = 0;
  if (b <= 2 * l + 1) block.d2 += 2 * binom(b, l + 1);
  if (b == 2 * l + 2) block.d2 += binom(b, l + 1);
  block.c11 = clamp_nonneg(binom(b - 2, l - 1) - binom(b - 2, l));
  block.c12 = clamp_nonneg(binom(b - 1, l) - binom(b - 1, l + 1));
  block.c22 = clamp_nonneg(binom(b, l + 1) - binom(b, l + 2));
  return block;
}

BlockPsdReport check_block_psd(const CoefficientBlock& block) {
  BlockPsdReport report;
  if (block.b > 0) report.diag1_ok = block.d1 - block.c11 >= 0;
  if (block.a > 0) report.diag2_ok = block.d2 - block.c22 >= 0;
  if (block.a > 0 && block.b > 0) {
    const mpz_class lhs =
        (block.d1 + (block.b - 1) * block.c11) * (block.d2 + (block.a - 1) * block.c22);
    const mpz_class rhs = mpz_class(block.a) * block.b * block.c12 * block.c12;
    report.coupling_ok = lhs >= rhs;
  }

  const int size = block.b + block.a;
  if (size > 0) {
    Eigen::MatrixXd dense(size, size);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        const bool i1 = i < block.b;
        const bool j1 = j < block.b;
        mpz_class value;
        if (i1 && j1)
          value = i == j ? block.d1 : block.c11;
        else if (!i1 && !j1)
          value = i == j ? block.d2 : block.c22;
        else
          value = block.c12;
        dense(i, j) = value.get_d();
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = es.eigenvalues()(0);
    const double norm = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(size - 1)));
    report.eig_ok = report.min_eigenvalue >= -1e-10 * norm;
  }

  report.pass = report.diag1_ok && report.diag2_ok && report.coupling_ok && report.eig_ok;
  return report;
}

CertifyReport certify(int n_level) {
  if (n_level < 1 || n_level > 4) throw CertificateError("certify supports 1 <= N <= 4");
  CertifyReport report;
  report.n_level = n_level;
  report.pass = true;

  std::vector<ExtractedBlock> blocks;
  try {
    blocks = extract_blocks(build_tilde_m(2 * n_level + 1));
  } catch (const CertificateError& err) {
    report.pass = false;
    report.failure = err.what();
    return report;
  }

  for (const ExtractedBlock& extracted : blocks) {
    const CoefficientBlock& got = extracted.block;
    const CoefficientBlock want = closed_form_block(got.b, got.a, n_level);
    bool match = true;
    if (got.b > 0) match = match && got.d1 == want.d1;
    if (got.b > 1) match = match && got.c11 == want.c11;
    if (got.a > 0) match = match && got.d2 == want.d2;
    if (got.a > 1) match = match && got.c22 == want.c22;
    if (got.a > 0 && got.b > 0) match = match && got.c12 == want.c12;

    const BlockPsdReport psd = check_block_psd(got);

    BlockClassReport cls;
    cls.alpha = extracted.alpha;
    cls.b = got.b;
    cls.a = got.a;
    cls.multiplicity = extracted.multiplicity;
    cls.d1 = got.d1.get_si();
    cls.d2 = got.d2.get_si();
    cls.c11 = got.c11.get_si();
    cls.c12 = got.c12.get_si();
    cls.c22 = got.c22.get_si();
    cls.matches_closed_form = match;
    cls.psd = psd.pass;
    report.alpha_count += extracted.multiplicity;
    report.classes.push_back(std::move(cls));

    if (!match || !psd.pass) {
      report.pass = false;
      if (report.failure.empty()) {
        report.failure = (match ? std::string("PSD check failed") :
                                  std::string("closed-form mismatch")) +
                         " for class (b=" + std::to_string(got.b) +
                         ", a=" + std::to_string(got.a) + ")";
      }
    }
  }
  return report;
}

}  // namespace contest
