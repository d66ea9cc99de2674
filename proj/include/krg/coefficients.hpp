#pragma once

// Coefficient rings of a point with the 8-fold periodicity collapsed:
//   KR: Z{1, eta, eta^2, mu} with 2 eta = 0, eta^3 = 0, eta mu = 0, mu^2 = 4
//   K : Z[beta] / (beta^4 - 1), beta in degree -2
// Degrees are integers mod 8; canon_degree picks the representative in [-6, 1].

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace krg {

int canon_degree(int d);

struct KCoeff {
  std::array<std::int64_t, 4> c{};  // coefficient of beta^i

  static KCoeff one() { return beta_power(0); }
  static KCoeff beta_power(int i, std::int64_t coeff = 1);

  bool is_zero() const;
  KCoeff conj() const;  // beta -> -beta
  std::string to_string() const;

  friend KCoeff operator+(const KCoeff& a, const KCoeff& b);
  friend KCoeff operator-(const KCoeff& a, const KCoeff& b);
  friend KCoeff operator*(const KCoeff& a, const KCoeff& b);
  friend KCoeff operator*(std::int64_t k, const KCoeff& a);
  friend bool operator==(const KCoeff&, const KCoeff&) = default;
};

/// Basis index of a KR coefficient: the exponent recorded is the degree drop.
enum class KRBasis : int { One = 0, Eta = 1, Eta2 = 2, Mu = 4 };

int degree_of(KRBasis b);

struct KRCoeff {
  std::int64_t one = 0, eta = 0, eta2 = 0, mu = 0;  // eta, eta2 kept in {0, 1}

  static KRCoeff basis(KRBasis b, std::int64_t coeff = 1);
  static KRCoeff scalar(std::int64_t k) { return basis(KRBasis::One, k); }

  std::int64_t coefficient(KRBasis b) const;
  bool is_zero() const { return one == 0 && eta == 0 && eta2 == 0 && mu == 0; }
  std::string to_string() const;

  friend KRCoeff operator+(const KRCoeff& a, const KRCoeff& b);
  friend KRCoeff operator-(const KRCoeff& a, const KRCoeff& b);
  friend KRCoeff operator*(const KRCoeff& a, const KRCoeff& b);
  friend KRCoeff operator*(std::int64_t k, const KRCoeff& a);
  friend bool operator==(const KRCoeff&, const KRCoeff&) = default;
};

inline constexpr std::array<KRBasis, 4> kKRBasis{KRBasis::One, KRBasis::Eta, KRBasis::Eta2, KRBasis::Mu};

/// coeff * eta^eta_pow * mu^mu_pow * beta_R^beta_pow, beta_R = 1.
struct KRMonomial {
  std::int64_t coeff = 1;
  int eta_pow = 0, mu_pow = 0, beta_pow = 0;
};

KRCoeff kr_normalize(const std::vector<KRMonomial>& raw);

KCoeff c_coeff(const KRCoeff& x);
KRCoeff r_coeff(const KCoeff& y);

}  // namespace krg
