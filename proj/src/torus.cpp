#include "krg/torus.hpp"

#include <omp.h>

#include <sstream>

#include "krg/error.hpp"

namespace krg {

TorusElement& TorusElement::add(Mask m, const std::vector<std::int64_t>& e, std::int64_t c) {
  if (c == 0) return *this;
  Key key{m, e};
  auto& slot = terms[key];
  slot = checked_add(slot, c);
  if (slot == 0) terms.erase(key);
  return *this;
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
  return *this;
}

namespace {

void accumulate(TorusElement& out, const TorusElement::Key& ka, std::int64_t ca, const TorusElement& b) {
  for (const auto& [kb, cb] : b.terms) {
    int s = wedge_sign(ka.first, kb.first);
    if (s == 0) continue;
    std::vector<std::int64_t> e = ka.second;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.second[i];
    out.add(ka.first | kb.first, e, s * checked_mul(ca, cb));
  }
}

}  // namespace

TorusElement torus_multiply(const TorusElement& a, const TorusElement& b) {
  TorusElement out;
  for (const auto& [ka, ca] : a.terms) accumulate(out, ka, ca, b);
  return out;
}

TorusElement torus_multiply_parallel(const TorusElement& a, const TorusElement& b) {
  std::vector<std::pair<TorusElement::Key, std::int64_t>> left(a.terms.begin(), a.terms.end());
  std::vector<TorusElement> partial(omp_get_max_threads());
  const long n = static_cast<long>(left.size());
#pragma omp parallel
  {
    TorusElement& mine = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) accumulate(mine, left[i].first, left[i].second, b);
  }
  TorusElement out;
  for (const auto& p : partial) out += p;
  return out;
}

TorusElement torus_restriction_un(int n, FieldType field, int k, InvolutionKind kind) {
  if (n < 1 || n > 16) throw PreconditionError("torus model needs 1 <= n <= 16");
  if (k < 1 || k > n) throw PreconditionError("exterior power out of range");
  FieldType expect;
  switch (kind) {
    case InvolutionKind::SigmaR: expect = FieldType::Real; break;
    case InvolutionKind::SigmaH:
      if (n % 2) throw PreconditionError("sigmaH needs even n");
      expect = k % 2 ? FieldType::Quaternionic : FieldType::Real;
      break;
    default: throw UnsupportedGroup("U(n) needs sigmaR or sigmaH");
  }
  if (field != expect) throw PreconditionError("field does not match the type of the exterior power");
  TorusElement out;
  for (Mask j = 0; j < (Mask{1} << n); ++j) {
    if (popcount(j) != k) continue;
    std::vector<std::int64_t> e(n, 0);
    for (int i = 0; i < n; ++i) e[i] = j >> i & 1;
    for (int i = 0; i < n; ++i)
      if (j >> i & 1) out.add(Mask{1} << i, e, 1);
  }
  return out;
}

TorusElement torus_top_form(int n, InvolutionKind kind, bool parallel) {
  TorusElement out;
  out.add(0, std::vector<std::int64_t>(n, 0), 1);
  for (int k = 1; k <= n; ++k) {
    FieldType f = kind == InvolutionKind::SigmaH && k % 2 ? FieldType::Quaternionic : FieldType::Real;
    TorusElement img = torus_restriction_un(n, f, k, kind);
    out = parallel ? torus_multiply_parallel(out, img) : torus_multiply(out, img);
  }
  return out;
}

TorusElement weyl_denominator_form(int n) {
  TorusElement out;
  out.add(0, std::vector<std::int64_t>(n, 0), 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      TorusElement f;
      std::vector<std::int64_t> ei(n, 0), ej(n, 0);
      ei[i] = 1;
      ej[j] = 1;
      f.add(0, ei, 1);
      f.add(0, ej, -1);
      out = torus_multiply(out, f);
    }
  TorusElement top;
  top.add((Mask{1} << n) - 1, std::vector<std::int64_t>(n, 1), 1);
  return torus_multiply(out, top);
}

std::string to_string(const TorusElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x.terms) {
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    os << (c < 0 ? -c : c);
    for (std::size_t i = 0; i < k.second.size(); ++i)
      if (k.second[i]) os << "*e" << i + 1 << (k.second[i] == 1 ? "" : "^" + std::to_string(k.second[i]));
    for (Mask rest = k.first; rest; rest &= rest - 1) os << "*d" << __builtin_ctz(rest) + 1;
  }
  return os.str();
}

}  // namespace krg
