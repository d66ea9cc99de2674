#include "krg/bz.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "krg/error.hpp"

namespace krg {

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int x = __builtin_ctz(rest);
    swaps += popcount(a >> (x + 1));
  }
  return swaps % 2 ? -1 : 1;
}

BZElement& BZElement::add(Mask m, const KGScalar& c) {
  if (c.is_zero()) return *this;
  auto& slot = terms[m];
  slot += c;
  if (slot.is_zero()) terms.erase(m);
  return *this;
}

BZElement& BZElement::operator+=(const BZElement& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

BZElement operator*(std::int64_t k, const BZElement& a) {
  BZElement out;
  for (const auto& [m, c] : a.terms) out.add(m, k * c);
  return out;
}

struct BZPresentation::Memo {
  std::mutex mu;
  std::map<std::vector<std::int64_t>, KGScalar> monomials;
};

BZPresentation::BZPresentation(TypeContext ctx, int abar_sign)
    : ctx_(std::move(ctx)), abar_sign_(abar_sign), memo_(std::make_shared<Memo>()) {
  if (abar_sign != 1 && abar_sign != -1) throw PreconditionError("abar sign must be +1 or -1");
  const auto& fund = ctx_.root_data().fundamental_weights;
  if (fund.size() > 31) throw UnsupportedGroup("too many fundamental representations");
  for (const auto& f : fund) {
    Weight tw = twisted_dual(ctx_.root_data(), ctx_.involution(), f);
    auto it = std::find(fund.begin(), fund.end(), tw);
    partner_.push_back(it == fund.end() ? -1 : static_cast<int>(it - fund.begin()));
  }
}

std::string BZPresentation::generator_name(int f) const {
  return "dG" + weight_to_string(ctx_.root_data().fundamental_weights.at(f));
}

BZElement BZPresentation::unit() const { return scalar(KGScalar::term(0, ctx_.group().zero_weight())); }

BZElement BZPresentation::scalar(const KGScalar& c) const {
  BZElement out;
  out.add(0, c);
  return out;
}

BZElement BZPresentation::generator(int f) const {
  BZElement out;
  out.add(Mask{1} << f, KGScalar::term(0, ctx_.group().zero_weight()));
  return out;
}

int BZPresentation::partner(int f) const {
  int p = partner_.at(f);
  if (p < 0)
    throw UnsupportedGroup("the involution does not permute the fundamental representations of " +
                           ctx_.root_data().spec.to_string());
  return p;
}

BZElement BZPresentation::abar_generator(int f) const { return abar_sign_ * generator(partner(f)); }

BZElement BZPresentation::multiply(const BZElement& a, const BZElement& b) const {
  BZElement out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      out.add(ma | mb, s * krg::multiply(ctx_, ca, cb));
    }
  return out;
}

BZElement BZPresentation::tau(const BZElement& a) const {
  BZElement out;
  for (const auto& [m, c] : a.terms) {
    std::vector<int> image;
    int sign = 1;
    for (Mask rest = m; rest; rest &= rest - 1) {
      image.push_back(partner(__builtin_ctz(rest)));
      sign *= abar_sign_;
    }
    for (std::size_t i = 0; i < image.size(); ++i)
      for (std::size_t j = i + 1; j < image.size(); ++j)
        if (image[i] > image[j]) sign = -sign;
    Mask target = 0;
    for (int f : image) target |= Mask{1} << f;
    out.add(target, sign * conjugate(ctx_, c));
  }
  return out;
}

KGScalar BZPresentation::evaluate(const std::vector<std::int64_t>& exponents) const {
  {
    std::lock_guard lock(memo_->mu);
    auto it = memo_->monomials.find(exponents);
    if (it != memo_->monomials.end()) return it->second;
  }
  const auto& fund = ctx_.root_data().fundamental_weights;
  std::map<Weight, std::int64_t> product{{ctx_.group().zero_weight(), 1}};
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    Weight factor = fund[i];
    if (exponents[i] < 0)
      for (auto& x : factor) x = -x;
    std::int64_t times = exponents[i] < 0 ? -exponents[i] : exponents[i];
    for (std::int64_t t = 0; t < times; ++t) {
      std::map<Weight, std::int64_t> next;
      for (const auto& [w, m] : product)
        for (const auto& [v, k] : ctx_.group().tensor_decompose(w, factor))
          next[v] = checked_add(next[v], checked_mul(m, k));
      product = std::move(next);
    }
  }
  KGScalar out;
  for (const auto& [w, m] : product) out.add(0, w, m);
  std::lock_guard lock(memo_->mu);
  return memo_->monomials.emplace(exponents, std::move(out)).first->second;
}

KGScalar BZPresentation::evaluate(const FundamentalPolynomial& p) const {
  KGScalar out;
  for (const auto& [e, c] : p) out += c * evaluate(e);
  return out;
}

BZElement BZPresentation::delta_lift(const FundamentalPolynomial& p) const {
  BZElement out;
  for (const auto& [e, c] : p)
    for (std::size_t f = 0; f < e.size(); ++f) {
      if (e[f] == 0) continue;
      auto lowered = e;
      --lowered[f];
      BZElement term;
      term.add(Mask{1} << f, checked_mul(c, e[f]) * evaluate(lowered));
      out += term;
    }
  return out;
}

std::vector<std::int64_t> BZPresentation::exterior_ranks() const {
  int n = generator_count();
  std::vector<std::int64_t> out(n + 1, 0);
  for (Mask m = 0; m < (Mask{1} << n); ++m) ++out[popcount(m)];
  return out;
}

int BZPresentation::degree(Mask m, int beta_power) { return canon_degree(-popcount(m) - 2 * beta_power); }

std::string BZPresentation::to_string(const BZElement& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (Mask rest = m; rest; rest &= rest - 1) os << "*" << generator_name(__builtin_ctz(rest));
  }
  return os.str();
}

}  // namespace krg
