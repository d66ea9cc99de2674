#include "krg/coefficients.hpp"

#include <sstream>

#include "krg/error.hpp"

namespace krg {

namespace {

std::int64_t mod2(std::int64_t x) { return ((x % 2) + 2) % 2; }

int mod4(int x) { return ((x % 4) + 4) % 4; }

KRCoeff normalized(KRCoeff x) {
  x.eta = mod2(x.eta);
  x.eta2 = mod2(x.eta2);
  return x;
}

void append_term(std::ostringstream& os, bool& first, std::int64_t k, const std::string& name) {
  if (k == 0) return;
  if (!first) os << (k < 0 ? " - " : " + ");
  else if (k < 0) os << "-";
  std::int64_t a = k < 0 ? -k : k;
  if (name.empty()) os << a;
  else if (a == 1) os << name;
  else os << a << name;
  first = false;
}

}  // namespace

int canon_degree(int d) {
  int m = ((d % 8) + 8) % 8;  // 0..7
  return m <= 1 ? m : m - 8;
}

KCoeff KCoeff::beta_power(int i, std::int64_t coeff) {
  KCoeff k;
  k.c[mod4(i)] = coeff;
  return k;
}

bool KCoeff::is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

KCoeff KCoeff::conj() const {
  KCoeff out = *this;
  out.c[1] = -out.c[1];
  out.c[3] = -out.c[3];
  return out;
}

std::string KCoeff::to_string() const {
  std::ostringstream os;
  bool first = true;
  const char* names[] = {"", "b", "b^2", "b^3"};
  for (int i = 0; i < 4; ++i) append_term(os, first, c[i], names[i]);
  return first ? "0" : os.str();
}

KCoeff operator+(const KCoeff& a, const KCoeff& b) {
  KCoeff out;
  for (int i = 0; i < 4; ++i) out.c[i] = checked_add(a.c[i], b.c[i]);
  return out;
}

KCoeff operator-(const KCoeff& a, const KCoeff& b) { return a + (-1) * b; }

KCoeff operator*(const KCoeff& a, const KCoeff& b) {
  KCoeff out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.c[(i + j) % 4] = checked_add(out.c[(i + j) % 4], checked_mul(a.c[i], b.c[j]));
  return out;
}

KCoeff operator*(std::int64_t k, const KCoeff& a) {
  KCoeff out;
  for (int i = 0; i < 4; ++i) out.c[i] = checked_mul(k, a.c[i]);
  return out;
}

int degree_of(KRBasis b) { return -static_cast<int>(b); }

KRCoeff KRCoeff::basis(KRBasis b, std::int64_t coeff) {
  KRCoeff x;
  switch (b) {
    case KRBasis::One: x.one = coeff; break;
    case KRBasis::Eta: x.eta = coeff; break;
    case KRBasis::Eta2: x.eta2 = coeff; break;
    case KRBasis::Mu: x.mu = coeff; break;
  }
  return normalized(x);
}

std::int64_t KRCoeff::coefficient(KRBasis b) const {
  switch (b) {
    case KRBasis::One: return one;
    case KRBasis::Eta: return eta;
    case KRBasis::Eta2: return eta2;
    case KRBasis::Mu: return mu;
  }
  return 0;
}

std::string KRCoeff::to_string() const {
  std::ostringstream os;
  bool first = true;
  append_term(os, first, one, "");
  append_term(os, first, eta, "eta");
  append_term(os, first, eta2, "eta^2");
  append_term(os, first, mu, "mu");
  return first ? "0" : os.str();
}

KRCoeff operator+(const KRCoeff& a, const KRCoeff& b) {
  return normalized({checked_add(a.one, b.one), a.eta + b.eta, a.eta2 + b.eta2, checked_add(a.mu, b.mu)});
}

KRCoeff operator-(const KRCoeff& a, const KRCoeff& b) { return a + (-1) * b; }

KRCoeff operator*(const KRCoeff& a, const KRCoeff& b) {
  KRCoeff out;
  out.one = checked_add(checked_mul(a.one, b.one), checked_mul(4, checked_mul(a.mu, b.mu)));
  out.eta = mod2(a.one) * b.eta + a.eta * mod2(b.one);
  out.eta2 = mod2(a.one) * b.eta2 + a.eta2 * mod2(b.one) + a.eta * b.eta;
  out.mu = checked_add(checked_mul(a.one, b.mu), checked_mul(a.mu, b.one));
  return normalized(out);
}

KRCoeff operator*(std::int64_t k, const KRCoeff& a) {
  return normalized({checked_mul(k, a.one), mod2(k) * a.eta, mod2(k) * a.eta2, checked_mul(k, a.mu)});
}

KRCoeff kr_normalize(const std::vector<KRMonomial>& raw) {
  KRCoeff total;
  for (const auto& m : raw) {
    if (m.eta_pow < 0 || m.mu_pow < 0) throw PreconditionError("negative exponent in KR monomial");
    KRCoeff term = KRCoeff::scalar(m.coeff);
    for (int i = 0; i < m.eta_pow; ++i) term = term * KRCoeff::basis(KRBasis::Eta);
    for (int i = 0; i < m.mu_pow; ++i) term = term * KRCoeff::basis(KRBasis::Mu);
    total = total + term;
  }
  return total;
}

KCoeff c_coeff(const KRCoeff& x) { return KCoeff::beta_power(0, x.one) + KCoeff::beta_power(2, checked_mul(2, x.mu)); }

KRCoeff r_coeff(const KCoeff& y) {
  return KRCoeff::scalar(checked_mul(2, y.c[0])) + KRCoeff::basis(KRBasis::Eta2, y.c[1]) +
         KRCoeff::basis(KRBasis::Mu, y.c[2]);
}

}  // namespace krg
