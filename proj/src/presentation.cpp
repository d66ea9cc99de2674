#include "krg/presentation.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "krg/error.hpp"

namespace krg {

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

int inversions(const std::vector<int>& keys) {
  int n = 0;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j)
      if (keys[i] > keys[j]) ++n;
  return n;
}

int bits(const std::vector<std::uint8_t>& v) {
  int n = 0;
  for (auto b : v) n += b;
  return n;
}

int first_set(const std::vector<std::uint8_t>& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k]) return static_cast<int>(k);
  return -1;
}

std::string bit_string(const std::vector<std::uint8_t>& v) {
  std::string s;
  for (auto b : v) s += b ? '1' : '0';
  return s;
}

bool is_signed_unit(const TypeContext& ctx, const KRGScalar& a, std::int64_t& k) {
  if (a.terms.size() != 1) return false;
  const auto& [t, c] = *a.terms.begin();
  if (t.kind != TermKind::R || t.index != 0 || t.weight != ctx.group().zero_weight()) return false;
  k = c;
  return true;
}

}  // namespace

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::DeltaR: return "deltaR";
    case GenKind::DeltaH: return "deltaH";
    case GenKind::Lambda: return "lambda";
    case GenKind::RClass: return "rclass";
  }
  return "?";
}

int RClassIndex::degree() const { return canon_degree(-(2 * i + bits(eps) + bits(nu))); }

Mask RClassIndex::support() const {
  Mask m = 0;
  for (std::size_t k = 0; k < eps.size(); ++k)
    if (eps[k] || nu[k]) m |= Mask{1} << k;
  return m;
}

bool RClassIndex::canonical() const {
  if (eps.size() != nu.size()) return false;
  for (std::size_t k = 0; k < eps.size(); ++k)
    if (eps[k] && nu[k]) return false;
  int fe = first_set(eps), fn = first_set(nu);
  if (fe < 0) return false;
  return fn < 0 || fe < fn;
}

std::string RClassIndex::to_string() const {
  return "r[" + weight_to_string(rho) + ",b^" + std::to_string(i) + ",e=" + bit_string(eps) +
         ",n=" + bit_string(nu) + "]";
}

KRElement& KRElement::add(Mask m, const KRGScalar& a) {
  if (a.is_zero()) return *this;
  auto& slot = omega[m];
  slot += a;
  if (slot.is_zero()) omega.erase(m);
  return *this;
}

KRElement& KRElement::add(Mask m, const RClassIndex& idx, std::int64_t n) {
  if (n == 0) return *this;
  auto key = std::make_pair(m, idx);
  auto& slot = rpart[key];
  slot = checked_add(slot, n);
  if (slot == 0) rpart.erase(key);
  return *this;
}

KRElement& KRElement::operator+=(const KRElement& o) {
  for (const auto& [m, a] : o.omega) add(m, a);
  for (const auto& [key, n] : o.rpart) add(key.first, key.second, n);
  return *this;
}

KRElement operator*(std::int64_t k, const KRElement& a) {
  KRElement out;
  for (const auto& [m, x] : a.omega) out.add(m, k * x);
  for (const auto& [key, n] : a.rpart) out.add(key.first, key.second, checked_mul(k, n));
  return out;
}

struct KRPresentation::Memo {
  std::mutex mu;
  std::map<std::vector<std::int64_t>, KRGScalar> monomials;
};

KRPresentation::KRPresentation(TypeContext ctx, std::int64_t truncation, int abar_sign)
    : bz_(ctx, abar_sign),
      split_(split_fundamentals(ctx.group(), ctx.involution())),
      truncation_(truncation),
      memo_(std::make_shared<Memo>()) {
  auto push = [&](GenKind kind, const IrrepClass& c, int degree, const std::string& prefix) {
    Generator g;
    g.kind = kind;
    g.payload = c;
    g.degree = degree;
    g.slot = static_cast<int>(slots_.size());
    g.name = prefix + weight_to_string(c.highest);
    slots_.push_back(g);
  };
  for (int k = 0; k < split_.r(); ++k) {
    slot_of_fundamental_[split_.real_index[k]] = static_cast<int>(slots_.size());
    push(GenKind::DeltaR, split_.real[k], 1, "dR");
  }
  for (int k = 0; k < split_.s(); ++k) {
    slot_of_fundamental_[split_.quaternionic_index[k]] = static_cast<int>(slots_.size());
    push(GenKind::DeltaH, split_.quaternionic[k], -3, "dH");
  }
  for (int k = 0; k < split_.t(); ++k) {
    pair_of_fundamental_[split_.complex_index[k]] = k;
    pair_of_fundamental_[split_.complex_partner_index[k]] = k;
    push(GenKind::Lambda, split_.complex[k], 0, "lambda");
  }
  if (slots_.size() > 31) throw UnsupportedGroup("too many exterior generators");
  squares_.assign(slots_.size(), KRElement{});
  overridden_.assign(slots_.size(), false);
}

int KRPresentation::mask_degree(Mask m) const {
  int d = 0;
  for (Mask rest = m; rest; rest &= rest - 1) d += slots_[__builtin_ctz(rest)].degree;
  return canon_degree(d);
}

int KRPresentation::odd_count(Mask m) const {
  int n = 0;
  for (Mask rest = m; rest; rest &= rest - 1) n += odd(__builtin_ctz(rest));
  return n;
}

Mask KRPresentation::lambda_mask(Mask support) const {
  Mask out = 0;
  int base = split_.r() + split_.s();
  for (Mask rest = support; rest; rest &= rest - 1) out |= Mask{1} << (base + __builtin_ctz(rest));
  return out;
}

std::vector<RClassIndex> KRPresentation::listed_rclasses() const {
  std::vector<RClassIndex> out;
  int t = split_.t();
  if (t == 0) return out;
  std::vector<Weight> rhos{context().group().zero_weight()};
  for (const auto& w : context().group().irreps_up_to(truncation_))
    if (context().info(w).type == FieldType::Complex) rhos.push_back(w);
  int patterns = 1;
  for (int k = 0; k < t; ++k) patterns *= 3;
  for (const auto& rho : rhos)
    for (int i = 0; i < 4; ++i)
      for (int p = 0; p < patterns; ++p) {
        RClassIndex idx{rho, i, std::vector<std::uint8_t>(t, 0), std::vector<std::uint8_t>(t, 0)};
        for (int k = 0, q = p; k < t; ++k, q /= 3) {
          if (q % 3 == 1) idx.eps[k] = 1;
          if (q % 3 == 2) idx.nu[k] = 1;
        }
        if (idx.canonical()) out.push_back(idx);
      }
  return out;
}

std::vector<Generator> KRPresentation::generators() const {
  std::vector<Generator> out = slots_;
  for (const auto& idx : listed_rclasses()) {
    Generator g;
    g.kind = GenKind::RClass;
    g.name = idx.to_string();
    g.degree = idx.degree();
    g.payload = context().info(idx.rho);
    g.rclass = idx;
    out.push_back(g);
  }
  return out;
}

KRElement KRPresentation::unit() const { return scalar(KRGScalar::unit(context())); }

KRElement KRPresentation::scalar(const KRGScalar& a) const {
  KRElement out;
  out.add(0, a);
  return out;
}

KRElement KRPresentation::gen(int k) const {
  KRElement out;
  out.add(Mask{1} << k, KRGScalar::unit(context()));
  return out;
}

KRElement KRPresentation::rclass(const RClassIndex& idx) const { return realify(rclass_preimage(idx)); }

std::vector<int> KRPresentation::degrees(const KRElement& x) const {
  std::vector<int> out;
  for (const auto& [m, a] : x.omega)
    for (const auto& [t, c] : a.terms) out.push_back(canon_degree(t.degree() + mask_degree(m)));
  for (const auto& [key, n] : x.rpart) out.push_back(canon_degree(mask_degree(key.first) + key.second.degree()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void KRPresentation::set_square(int k, KRElement value) {
  squares_.at(k) = std::move(value);
  overridden_.at(k) = true;
}

void KRPresentation::add_r(KRElement& out, Mask m, const RClassIndex& idx, std::int64_t n) const {
  // lambda_k * r(w) = r(c(lambda_k) w) vanishes when w already involves pair k
  if (m & lambda_mask(idx.support())) return;
  out.add(m, idx, n);
}

KRElement KRPresentation::mul_monomials(Mask a, Mask b) const {
  Mask cur = a;
  int sign = 1;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int x = __builtin_ctz(rest);
    Mask bit = Mask{1} << x;
    if (odd(x) && odd_count(cur & ~((bit << 1) - 1)) % 2) sign = -sign;
    if (!(cur & bit)) {
      cur |= bit;
      continue;
    }
    if (squares_[x].is_zero()) return {};
    // cur \ x, then x*x (even, so it moves freely), then the rest of b
    KRElement head;
    head.add(cur & ~bit, sign * KRGScalar::unit(context()));
    KRElement tail;
    tail.add(rest & ~bit, KRGScalar::unit(context()));
    return multiply(multiply(squares_[x], head), tail);
  }
  KRElement out;
  out.add(cur, sign * KRGScalar::unit(context()));
  return out;
}

KRElement KRPresentation::push_into_r(const KRGScalar& a, Mask m, const RClassIndex& idx, std::int64_t n) const {
  KRElement out;
  std::int64_t k = 0;
  if (is_signed_unit(context(), a, k)) {
    add_r(out, m, idx, checked_mul(k, n));
    return out;
  }
  BZElement z = bz_.multiply(bz_.scalar(krg::complexify(context(), a)), rclass_preimage(idx));
  return n * left_monomial(m, realify(z));
}

KRElement KRPresentation::scale(const KRGScalar& a, const KRElement& x) const {
  KRElement out;
  for (const auto& [m, s] : x.omega) out.add(m, krg::multiply(context(), a, s));
  for (const auto& [key, n] : x.rpart) out += push_into_r(a, key.first, key.second, n);
  return out;
}

KRElement KRPresentation::left_monomial(Mask m, const KRElement& x) const {
  KRElement out;
  for (const auto& [mx, s] : x.omega) out += scale(s, mul_monomials(m, mx));
  for (const auto& [key, n] : x.rpart) out += times_r(mul_monomials(m, key.first), key.second, n);
  return out;
}

KRElement KRPresentation::times_r(const KRElement& x, const RClassIndex& idx, std::int64_t n) const {
  KRElement out;
  for (const auto& [m, s] : x.omega) out += push_into_r(s, m, idx, n);
  if (x.rpart.empty()) return out;
  BZElement w = rclass_preimage(idx);
  BZElement cw = w + bz_.tau(w);
  for (const auto& [key, k] : x.rpart) {
    // m r(w') r(w) = m r(w' c(r(w)))
    BZElement z = bz_.multiply(rclass_preimage(key.second), cw);
    out += checked_mul(k, n) * left_monomial(key.first, realify(z));
  }
  return out;
}

KRElement KRPresentation::multiply(const KRElement& a, const KRElement& b) const {
  KRElement out;
  for (const auto& [ma, sa] : a.omega) {
    for (const auto& [mb, sb] : b.omega) {
      KRGScalar s = krg::multiply(context(), sa, sb);
      if (!s.is_zero()) out += scale(s, mul_monomials(ma, mb));
    }
    for (const auto& [key, n] : b.rpart) out += times_r(scale(sa, mul_monomials(ma, key.first)), key.second, n);
  }
  for (const auto& [ka, na] : a.rpart) {
    int parity = (bits(ka.second.eps) + bits(ka.second.nu)) % 2;
    for (const auto& [mb, sb] : b.omega) {
      int sign = parity && odd_count(mb) % 2 ? -1 : 1;
      out += scale(sb, times_r(mul_monomials(ka.first, mb), ka.second, sign * na));
    }
    for (const auto& [kb, nb] : b.rpart) {
      int sign = parity && odd_count(kb.first) % 2 ? -1 : 1;
      out += times_r(times_r(mul_monomials(ka.first, kb.first), ka.second, sign * na), kb.second, nb);
    }
  }
  return out;
}

BZElement KRPresentation::rclass_preimage(const RClassIndex& idx) const {
  int t = split_.t();
  if (static_cast<int>(idx.eps.size()) != t || static_cast<int>(idx.nu.size()) != t)
    throw PreconditionError("r-class pattern length does not match the number of complex pairs");
  std::vector<int> order;
  int sign = 1;
  for (int k = 0; k < t; ++k)
    if (idx.eps[k]) order.push_back(split_.complex_index[k]);
  for (int k = 0; k < t; ++k)
    if (idx.nu[k]) {
      if (idx.eps[k]) return {};
      order.push_back(split_.complex_partner_index[k]);
      sign *= bz_.abar_sign();
    }
  if (inversions(order) % 2) sign = -sign;
  Mask m = 0;
  for (int f : order) m |= Mask{1} << f;
  BZElement out;
  out.add(m, KGScalar::term(idx.i, idx.rho, sign));
  return out;
}

KRElement KRPresentation::realify(const BZElement& z) const {
  KRElement out;
  const int t = split_.t();
  for (const auto& [m, y] : z.terms) {
    // classify the delta factors and find where each goes in the target order
    std::vector<int> fs;
    for (Mask rest = m; rest; rest &= rest - 1) fs.push_back(__builtin_ctz(rest));
    Mask has_g = 0, has_a = 0;
    for (int f : fs) {
      auto it = pair_of_fundamental_.find(f);
      if (it == pair_of_fundamental_.end()) continue;
      int k = it->second;
      (split_.complex_index[k] == f ? has_g : has_a) |= Mask{1} << k;
    }
    Mask both = has_g & has_a;
    const int nslots = slot_count();
    std::vector<int> keys;
    int sign = 1, extra_beta = 0;
    Mask out_mask = lambda_mask(both);
    extra_beta += popcount(both);
    for (int f : fs) {
      auto s = slot_of_fundamental_.find(f);
      if (s != slot_of_fundamental_.end()) {
        keys.push_back(s->second);
        out_mask |= Mask{1} << s->second;
        extra_beta += slots_[s->second].kind == GenKind::DeltaR ? 1 : 3;
        continue;
      }
      int k = pair_of_fundamental_.at(f);
      bool is_g = split_.complex_index[k] == f;
      if (!is_g) sign *= bz_.abar_sign();
      if (both >> k & 1) keys.push_back(nslots + 2 * k + (is_g ? 0 : 1));
      else keys.push_back(nslots + 2 * t + (is_g ? k : t + k));
    }
    if (inversions(keys) % 2) sign = -sign;
    RClassIndex idx;
    idx.eps.assign(t, 0);
    idx.nu.assign(t, 0);
    for (int k = 0; k < t; ++k) {
      if (both >> k & 1) continue;
      if (has_g >> k & 1) idx.eps[k] = 1;
      if (has_a >> k & 1) idx.nu[k] = 1;
    }
    bool bare = (has_g | has_a) == both;
    for (const auto& [key, c] : y.terms) {
      int j = mod4(key.first + extra_beta);
      std::int64_t coeff = checked_mul(sign, c);
      if (bare) {
        out.add(out_mask, coeff * krg::realify(context(), KGScalar::term(j, key.second)));
        continue;
      }
      RClassIndex cur = idx;
      cur.rho = key.second;
      cur.i = j;
      if (!cur.canonical()) {
        // r(x) = r(tau x)
        std::swap(cur.eps, cur.nu);
        cur.rho = context().info(key.second).twisted;
        if ((j + bits(cur.eps) * bits(cur.nu)) % 2) coeff = -coeff;
      }
      add_r(out, out_mask, cur, coeff);
    }
  }
  return out;
}

BZElement KRPresentation::complexify(const KRElement& x) const {
  auto image = [&](Mask m) {
    BZElement out = bz_.unit();
    const Weight zero = context().group().zero_weight();
    for (Mask rest = m; rest; rest &= rest - 1) {
      const Generator& g = slots_[__builtin_ctz(rest)];
      BZElement c;
      if (g.kind == GenKind::Lambda) {
        int k = g.slot - split_.r() - split_.s();
        int f = split_.complex_index[k];
        c = bz_.multiply(bz_.multiply(bz_.scalar(KGScalar::term(3, zero)), bz_.generator(f)), bz_.abar_generator(f));
      } else {
        auto it = std::find_if(slot_of_fundamental_.begin(), slot_of_fundamental_.end(),
                               [&](const auto& p) { return p.second == g.slot; });
        c.add(Mask{1} << it->first, KGScalar::term(g.kind == GenKind::DeltaR ? 3 : 1, zero));
      }
      out = bz_.multiply(out, c);
    }
    return out;
  };
  BZElement out;
  for (const auto& [m, a] : x.omega) out += bz_.multiply(bz_.scalar(krg::complexify(context(), a)), image(m));
  for (const auto& [key, n] : x.rpart) {
    BZElement w = rclass_preimage(key.second);
    out += n * bz_.multiply(image(key.first), w + bz_.tau(w));
  }
  return out;
}

RSquare KRPresentation::rclass_square(const RClassIndex& idx) const {
  if (!idx.canonical()) throw PreconditionError("r-class index is not canonical: " + idx.to_string());
  RSquare out;
  const int t = split_.t();
  // delta factors of w followed by those of tau(w), keyed by position in gamma_1, abar gamma_1, ...
  std::vector<int> keys;
  for (int k = 0; k < t; ++k)
    if (idx.eps[k]) keys.push_back(2 * k);
  for (int k = 0; k < t; ++k)
    if (idx.nu[k]) keys.push_back(2 * k + 1);
  for (int k = 0; k < t; ++k)
    if (idx.eps[k]) keys.push_back(2 * k + 1);
  for (int k = 0; k < t; ++k)
    if (idx.nu[k]) keys.push_back(2 * k);
  out.transpositions = inversions(keys);
  out.sign = (idx.i + out.transpositions) % 2 ? -1 : 1;
  Mask support = idx.support();
  out.exponent_extrapolated = popcount(support) > 1;
  KRGScalar e = real_structure(context(), idx.rho, context().info(idx.rho).twisted);
  int d = idx.degree();
  if (d == -1 || d == -5) {
    out.which = RSquare::Case::Eta2;
    out.value.add(lambda_mask(support), act(context(), KRCoeff::basis(KRBasis::Eta2), e));
  } else if (d == -2 || d == -6) {
    out.which = RSquare::Case::Mu;
    out.value.add(lambda_mask(support), out.sign * act(context(), KRCoeff::basis(KRBasis::Mu), e));
  }
  return out;
}

KRGScalar KRPresentation::evaluate(const std::vector<std::int64_t>& exponents) const {
  {
    std::lock_guard lock(memo_->mu);
    auto it = memo_->monomials.find(exponents);
    if (it != memo_->monomials.end()) return it->second;
  }
  const TypeContext& ctx = context();
  const auto& fund = ctx.root_data().fundamental_weights;
  KRGScalar out = KRGScalar::unit(ctx);
  for (std::size_t f = 0; f < exponents.size(); ++f) {
    if (exponents[f] == 0) continue;
    Weight w = fund[f];
    if (exponents[f] < 0)
      for (auto& x : w) x = -x;
    IrrepClass c = ctx.info(w);
    if (c.type == FieldType::Complex)
      throw PreconditionError("fundamental " + weight_to_string(w) + " has complex type");
    KRGScalar factor = KRGScalar::term(c.type == FieldType::Real ? TermKind::R : TermKind::H, 0, w);
    std::int64_t times = exponents[f] < 0 ? -exponents[f] : exponents[f];
    for (std::int64_t i = 0; i < times; ++i) out = krg::multiply(ctx, out, factor);
  }
  std::lock_guard lock(memo_->mu);
  return memo_->monomials.emplace(exponents, std::move(out)).first->second;
}

KRElement KRPresentation::delta_lift(const FundamentalPolynomial& p) const {
  KRElement out;
  for (const auto& [e, c] : p)
    for (std::size_t f = 0; f < e.size(); ++f) {
      if (e[f] == 0) continue;
      auto s = slot_of_fundamental_.find(static_cast<int>(f));
      if (s == slot_of_fundamental_.end())
        throw PreconditionError("delta of a complex-type fundamental has no exterior generator");
      auto lowered = e;
      --lowered[f];
      out.add(Mask{1} << s->second, checked_mul(c, e[f]) * evaluate(lowered));
    }
  return out;
}

KRElement KRPresentation::delta_lift(const Weight& lambda) const {
  return delta_lift(context().group().fundamental_polynomial(lambda));
}

KRElement KRPresentation::delta_scalar(const KRGScalar& x) const {
  KRElement out;
  const KRElement mu = scalar(KRGScalar::term(TermKind::R, static_cast<int>(KRBasis::Mu), context().group().zero_weight()));
  for (const auto& [t, c] : x.terms) {
    if (t.kind == TermKind::C) throw PreconditionError("delta of a complex-type coefficient");
    KRElement d = c * delta_lift(t.weight);
    if (t.index == static_cast<int>(KRBasis::Mu)) d = multiply(mu, d);
    else if (t.index != static_cast<int>(KRBasis::One))
      throw PreconditionError("delta is defined on degrees 0 and -4 only");
    out += d;
  }
  return out;
}

std::vector<Relation> KRPresentation::relations() const {
  std::vector<Relation> out;
  for (int k = 0; k < slot_count(); ++k) {
    std::string prov = overridden_[k] ? "fixture override"
                                      : (odd(k) ? "odd generator squares to zero" : "lambda squares to zero");
    out.push_back({slots_[k].name + "^2", squares_[k], prov});
  }
  auto listed = listed_rclasses();
  for (const auto& idx : listed) {
    RSquare sq = rclass_square(idx);
    std::string prov = "tabulated by degree " + std::to_string(idx.degree());
    if (sq.which == RSquare::Case::Mu)
      prov += ", sign (-1)^(i+T) with T=" + std::to_string(sq.transpositions) + " transpositions";
    if (sq.exponent_extrapolated) prov += ", lambda exponents extrapolated";
    out.push_back({idx.to_string() + "^2", sq.value, prov});
  }
  if (!listed.empty()) {
    const RClassIndex& idx = listed.front();
    KRElement r = rclass(idx);
    const Weight zero = context().group().zero_weight();
    out.push_back({idx.to_string() + "*eta",
                   multiply(r, scalar(KRGScalar::term(TermKind::R, static_cast<int>(KRBasis::Eta), zero))),
                   "projection formula, c(eta) = 0"});
    out.push_back({idx.to_string() + "*mu",
                   multiply(r, scalar(KRGScalar::term(TermKind::R, static_cast<int>(KRBasis::Mu), zero))),
                   "projection formula, c(mu) = 2 beta^2"});
  }
  return out;
}

std::string KRPresentation::to_string(const KRElement& x) const {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto monomial = [&](Mask m) {
    for (Mask rest = m; rest; rest &= rest - 1) os << "*" << slots_[__builtin_ctz(rest)].name;
  };
  for (const auto& [m, a] : x.omega) {
    if (!first) os << " + ";
    first = false;
    os << "(" << a.to_string() << ")";
    monomial(m);
  }
  for (const auto& [key, n] : x.rpart) {
    if (!first) os << " + ";
    first = false;
    os << n;
    monomial(key.first);
    os << "*" << key.second.to_string();
  }
  return os.str();
}

}  // namespace krg
