#include "krg/lie.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <cctype>
#include <deque>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "krg/error.hpp"

namespace krg {

namespace {

using Rational = boost::rational<std::int64_t>;

const char* family_name(Family f) {
  switch (f) {
    case Family::SU: return "SU";
    case Family::Sp: return "Sp";
    case Family::Spin: return "Spin";
    case Family::U: return "U";
    case Family::G2: return "G";
    case Family::F4: return "F";
    case Family::E6:
    case Family::E7:
    case Family::E8: return "E";
  }
  return "?";
}

IntMatrix zeros(int r, int c) { return IntMatrix(r, std::vector<std::int64_t>(c, 0)); }

void link(IntMatrix& a, int i, int j, std::int64_t aij = -1, std::int64_t aji = -1) {
  a[i][j] = aij;
  a[j][i] = aji;
}

IntMatrix chain_cartan(int r) {
  IntMatrix a = zeros(r, r);
  for (int i = 0; i < r; ++i) a[i][i] = 2;
  for (int i = 0; i + 1 < r; ++i) link(a, i, i + 1);
  return a;
}

// Bourbaki numbering, cartan[i][j] = <alpha_i, alpha_j^vee>.
IntMatrix simple_cartan(const SimpleFactor& f) {
  switch (f.family) {
    case Family::SU:
    case Family::U: return chain_cartan(f.n - 1);
    case Family::Sp: {
      IntMatrix a = chain_cartan(f.n);
      if (f.n >= 2) link(a, f.n - 2, f.n - 1, -1, -2);
      return a;
    }
    case Family::Spin: {
      if (f.n % 2 == 1) {
        int r = (f.n - 1) / 2;
        IntMatrix a = chain_cartan(r);
        link(a, r - 2, r - 1, -2, -1);
        return a;
      }
      int r = f.n / 2;
      IntMatrix a = chain_cartan(r - 1);
      for (auto& row : a) row.push_back(0);
      a.emplace_back(r, 0);
      a[r - 1][r - 1] = 2;
      link(a, r - 3, r - 1);
      return a;
    }
    case Family::G2: {
      IntMatrix a = chain_cartan(2);
      link(a, 0, 1, -1, -3);
      return a;
    }
    case Family::F4: {
      IntMatrix a = chain_cartan(4);
      link(a, 1, 2, -2, -1);
      return a;
    }
    case Family::E6:
    case Family::E7:
    case Family::E8: {
      int r = f.n;
      IntMatrix a = zeros(r, r);
      for (int i = 0; i < r; ++i) a[i][i] = 2;
      link(a, 0, 2);
      link(a, 1, 3);
      for (int i = 2; i + 1 < r; ++i) link(a, i, i + 1);
      return a;
    }
  }
  throw UnsupportedGroup("unsupported group");
}

void validate(const SimpleFactor& f) {
  bool ok = true;
  switch (f.family) {
    case Family::SU: ok = f.n >= 2; break;
    case Family::Sp: ok = f.n >= 1; break;
    case Family::U: ok = f.n >= 1; break;
    case Family::Spin: ok = f.n >= 5; break;
    case Family::G2: ok = f.n == 2; break;
    case Family::F4: ok = f.n == 4; break;
    case Family::E6: ok = f.n == 6; break;
    case Family::E7: ok = f.n == 7; break;
    case Family::E8: ok = f.n == 8; break;
  }
  if (!ok) throw UnsupportedGroup("unsupported group: " + f.to_string());
}

std::vector<std::vector<Rational>> inverse(const IntMatrix& a) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
    m[i][n + i] = Rational(1);
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m[p][c] == Rational(0)) ++p;
    if (p == n) throw InvariantViolation("singular Cartan matrix");
    std::swap(m[p], m[c]);
    Rational piv = m[c][c];
    for (auto& x : m[c]) x /= piv;
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == Rational(0)) continue;
      Rational f = m[r][c];
      for (int k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

std::int64_t lcm_of_denominators(const std::vector<Rational>& xs) {
  std::int64_t l = 1;
  for (const auto& x : xs) l = std::lcm(l, x.denominator());
  return l;
}

// Positive roots of a Cartan matrix in simple-root coordinates. With
// transpose=true the same closure runs on the coroot system.
IntMatrix positive_root_coords(const IntMatrix& a, bool transpose) {
  int r = static_cast<int>(a.size());
  auto entry = [&](int i, int j) { return transpose ? a[j][i] : a[i][j]; };
  std::set<std::vector<std::int64_t>> seen;
  std::deque<std::vector<std::int64_t>> queue;
  for (int i = 0; i < r; ++i) {
    std::vector<std::int64_t> e(r, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    auto b = queue.front();
    queue.pop_front();
    for (int i = 0; i < r; ++i) {
      std::int64_t p = 0;
      for (int j = 0; j < r; ++j) p += b[j] * entry(j, i);
      auto c = b;
      c[i] -= p;
      bool positive = std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x >= 0; });
      bool nonzero = std::any_of(c.begin(), c.end(), [](std::int64_t x) { return x != 0; });
      if (positive && nonzero && seen.insert(c).second) queue.push_back(c);
    }
  }
  IntMatrix out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    auto hx = std::accumulate(x.begin(), x.end(), std::int64_t{0});
    auto hy = std::accumulate(y.begin(), y.end(), std::int64_t{0});
    return hx != hy ? hx < hy : x < y;
  });
  return out;
}

std::vector<std::vector<int>> cartan_automorphisms(const IntMatrix& a) {
  int r = static_cast<int>(a.size());
  std::vector<std::vector<int>> out;
  std::vector<int> perm(r, -1);
  std::vector<bool> used(r, false);
  std::function<void(int)> go = [&](int i) {
    if (i == r) {
      out.push_back(perm);
      return;
    }
    for (int c = 0; c < r; ++c) {
      if (used[c] || a[c][c] != a[i][i]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        ok = a[i][j] == a[c][perm[j]] && a[j][i] == a[perm[j]][c];
      if (!ok) continue;
      used[c] = true;
      perm[i] = c;
      go(i + 1);
      used[c] = false;
    }
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string SimpleFactor::to_string() const {
  return std::string(family_name(family)) + std::to_string(n);
}

GroupSpec GroupSpec::parse(std::string_view text) {
  GroupSpec spec;
  if (text.empty()) throw PreconditionError("empty group spec");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('x', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    std::size_t k = 0;
    while (k < tok.size() && std::isalpha(static_cast<unsigned char>(tok[k]))) ++k;
    std::string_view name = tok.substr(0, k);
    std::string_view digits = tok.substr(k);
    if (name.empty() || digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        digits.size() > 4)
      throw PreconditionError("malformed group spec '" + std::string(text) + "'");
    int n = std::stoi(std::string(digits));
    SimpleFactor f{Family::SU, n};
    if (name == "SU") f.family = Family::SU;
    else if (name == "Sp") f.family = Family::Sp;
    else if (name == "Spin") f.family = Family::Spin;
    else if (name == "U") f.family = Family::U;
    else if (name == "G") f.family = Family::G2;
    else if (name == "F") f.family = Family::F4;
    else if (name == "E") f.family = n == 6 ? Family::E6 : n == 7 ? Family::E7 : Family::E8;
    else throw PreconditionError("unknown group family '" + std::string(name) + "'");
    validate(f);
    spec.factors.push_back(f);
    if (end == text.size()) break;
    pos = end + 1;
    if (pos == text.size()) throw PreconditionError("trailing 'x' in group spec");
  }
  return spec;
}

std::string GroupSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "x";
    s += factors[i].to_string();
  }
  return s;
}

int RootData::factor_dim(int f) const {
  int next = f + 1 < factor_count() ? factor_coord_offset[f + 1] : dim;
  return next - factor_coord_offset[f];
}

RootData build_root_data(const GroupSpec& spec) {
  if (spec.factors.empty()) throw UnsupportedGroup("unsupported group: empty product");
  RootData rd;
  rd.spec = spec;
  for (const auto& f : spec.factors) {
    validate(f);
    rd.factor_coord_offset.push_back(rd.dim);
    rd.factor_root_offset.push_back(rd.rank);
    IntMatrix a = simple_cartan(f);
    int r = static_cast<int>(a.size());
    int d = f.family == Family::U ? f.n : r;
    rd.rank += r;
    rd.dim += d;
  }
  rd.cartan = zeros(rd.rank, rd.rank);
  rd.form = zeros(rd.dim, rd.dim);
  rd.rho.assign(rd.dim, 0);
  rd.height.assign(rd.dim, 0);

  for (int fi = 0; fi < rd.factor_count(); ++fi) {
    const SimpleFactor& f = spec.factors[fi];
    IntMatrix a = simple_cartan(f);
    int r = static_cast<int>(a.size());
    int co = rd.factor_coord_offset[fi];
    int ro = rd.factor_root_offset[fi];
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) rd.cartan[ro + i][ro + j] = a[i][j];

    IntMatrix roots(r, std::vector<std::int64_t>(rd.dim, 0));
    IntMatrix coroots(r, std::vector<std::int64_t>(rd.dim, 0));
    if (f.family == Family::U) {
      int n = f.n;
      for (int i = 0; i < r; ++i) {
        roots[i][co + i] = 1;
        roots[i][co + i + 1] = -1;
        coroots[i] = roots[i];
      }
      for (int i = 0; i < n; ++i) {
        rd.form[co + i][co + i] = 1;
        rd.rho[co + i] = n - 1 - i;
        rd.height[co + i] = n - 1 - i;
      }
      for (int k = 1; k <= n; ++k) {
        Weight w(rd.dim, 0);
        for (int i = 0; i < k; ++i) w[co + i] = 1;
        rd.fundamental_weights.push_back(w);
      }
    } else {
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) roots[i][co + j] = a[i][j];
        coroots[i][co + i] = 1;
        rd.rho[co + i] = 1;
        Weight w(rd.dim, 0);
        w[co + i] = 1;
        rd.fundamental_weights.push_back(w);
      }
      // Symmetrizer d with a[i][j] d_j = a[j][i] d_i; (alpha_i, alpha_i) = 2 d_i.
      std::vector<Rational> dsym(r, Rational(0));
      dsym[0] = Rational(1);
      for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < r; ++i) {
          if (dsym[i] == Rational(0)) continue;
          for (int j = 0; j < r; ++j) {
            if (i == j || a[i][j] == 0 || dsym[j] != Rational(0)) continue;
            dsym[j] = dsym[i] * Rational(a[j][i], a[i][j]);
            changed = true;
          }
        }
      }
      auto inv = inverse(a);
      std::vector<Rational> gram;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) gram.push_back(inv[i][j] * dsym[j]);
      std::int64_t scale = lcm_of_denominators(gram);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          Rational g = gram[i * r + j] * Rational(scale);
          rd.form[co + i][co + j] = g.numerator();
        }
      std::vector<Rational> h(r, Rational(0));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) h[i] += inv[i][j];
      std::int64_t hs = lcm_of_denominators(h);
      for (int i = 0; i < r; ++i) rd.height[co + i] = (h[i] * Rational(hs)).numerator();
    }
    for (int i = 0; i < r; ++i) {
      rd.simple_roots.push_back(roots[i]);
      rd.simple_coroots.push_back(coroots[i]);
    }
    for (const auto& c : positive_root_coords(a, false)) {
      Weight v(rd.dim, 0);
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < rd.dim; ++k) v[k] += c[j] * roots[j][k];
      rd.positive_roots.push_back(v);
    }
    for (const auto& c : positive_root_coords(a, true)) {
      std::vector<std::int64_t> v(rd.dim, 0);
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < rd.dim; ++k) v[k] += c[j] * coroots[j][k];
      rd.positive_coroots.push_back(v);
    }
  }

  // Longest element: the unique w sending -rho into the dominant chamber.
  Weight neg_rho = rd.rho;
  for (auto& x : neg_rho) x = -x;
  auto word = to_dominant(rd, neg_rho).word;
  rd.w0 = zeros(rd.dim, rd.dim);
  for (int k = 0; k < rd.dim; ++k) {
    Weight e(rd.dim, 0);
    e[k] = 1;
    for (int i : word) e = reflect(rd, e, i);
    for (int j = 0; j < rd.dim; ++j) rd.w0[j][k] = e[j];
  }
  rd.diagram_automorphisms = cartan_automorphisms(rd.cartan);
  return rd;
}

std::int64_t pairing(const Weight& w, const std::vector<std::int64_t>& covector) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s = checked_add(s, checked_mul(w[i], covector[i]));
  return s;
}

std::int64_t inner(const RootData& rd, const Weight& a, const Weight& b) {
  std::int64_t s = 0;
  for (int i = 0; i < rd.dim; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rd.dim; ++j)
      if (rd.form[i][j] != 0 && b[j] != 0) s = checked_add(s, checked_mul(checked_mul(a[i], rd.form[i][j]), b[j]));
  }
  return s;
}

bool is_dominant(const RootData& rd, const Weight& w) {
  for (const auto& c : rd.simple_coroots)
    if (pairing(w, c) < 0) return false;
  return true;
}

Weight reflect(const RootData& rd, const Weight& w, int i) {
  std::int64_t p = pairing(w, rd.simple_coroots[i]);
  Weight out = w;
  if (p != 0)
    for (int k = 0; k < rd.dim; ++k) out[k] -= p * rd.simple_roots[i][k];
  return out;
}

Weight apply_matrix(const IntMatrix& m, const Weight& w) {
  Weight out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) out[i] += m[i][j] * w[j];
  return out;
}

ChamberResult to_dominant(const RootData& rd, Weight w) {
  ChamberResult res;
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = 0; i < rd.rank; ++i) {
      if (pairing(w, rd.simple_coroots[i]) < 0) {
        w = reflect(rd, w, i);
        res.sign = -res.sign;
        res.word.push_back(i);
        moved = true;
      }
    }
  }
  for (const auto& c : rd.simple_coroots)
    if (pairing(w, c) == 0) res.singular = true;
  res.dominant = std::move(w);
  return res;
}

std::int64_t weyl_dimension(const RootData& rd, const Weight& lambda) {
  if (!is_dominant(rd, lambda)) throw PreconditionError("weight " + weight_to_string(lambda) + " is not dominant");
  Rational d(1);
  Weight shifted = lambda;
  for (int i = 0; i < rd.dim; ++i) shifted[i] += rd.rho[i];
  for (const auto& c : rd.positive_coroots) d *= Rational(pairing(shifted, c), pairing(rd.rho, c));
  if (d.denominator() != 1) throw InvariantViolation("non-integral Weyl dimension");
  return d.numerator();
}

Weight dual_highest_weight(const RootData& rd, const Weight& lambda) {
  if (!is_dominant(rd, lambda)) throw PreconditionError("weight " + weight_to_string(lambda) + " is not dominant");
  Weight neg = lambda;
  for (auto& x : neg) x = -x;
  return to_dominant(rd, neg).dominant;
}

std::vector<std::int64_t> fundamental_exponents(const RootData& rd, const Weight& lambda) {
  if (!is_dominant(rd, lambda)) throw PreconditionError("weight " + weight_to_string(lambda) + " is not dominant");
  std::vector<std::int64_t> e;
  for (int fi = 0; fi < rd.factor_count(); ++fi) {
    int co = rd.factor_coord_offset[fi];
    int d = rd.factor_dim(fi);
    if (rd.spec.factors[fi].family == Family::U) {
      for (int k = 0; k + 1 < d; ++k) e.push_back(lambda[co + k] - lambda[co + k + 1]);
      e.push_back(lambda[co + d - 1]);
    } else {
      for (int k = 0; k < d; ++k) e.push_back(lambda[co + k]);
    }
  }
  return e;
}

std::string weight_to_string(const Weight& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

std::vector<Weight> weyl_orbit(const RootData& rd, const Weight& w) {
  std::set<Weight> seen{w};
  std::deque<Weight> queue{w};
  while (!queue.empty()) {
    Weight v = queue.front();
    queue.pop_front();
    for (int i = 0; i < rd.rank; ++i) {
      Weight u = reflect(rd, v, i);
      if (seen.insert(u).second) queue.push_back(u);
    }
  }
  return {seen.begin(), seen.end()};
}

struct LieGroup::Cache {
  std::mutex mu;
  std::map<Weight, FormalCharacter> dominant;
  std::map<Weight, FundamentalPolynomial> polys;
};

LieGroup::LieGroup(const GroupSpec& spec)
    : rd_(std::make_shared<const RootData>(build_root_data(spec))), cache_(std::make_shared<Cache>()) {}

std::int64_t LieGroup::dimension(const Weight& lambda) const { return weyl_dimension(*rd_, lambda); }

const FormalCharacter& LieGroup::dominant_character(const Weight& lambda) const {
  const RootData& rd = *rd_;
  if (!is_dominant(rd, lambda)) throw PreconditionError("weight " + weight_to_string(lambda) + " is not dominant");
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->dominant.find(lambda);
    if (it != cache_->dominant.end()) return it->second;
  }
  // Dominant weights below lambda are connected by subtracting positive roots.
  std::set<Weight> dom{lambda};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    Weight mu = queue.front();
    queue.pop_front();
    for (const auto& a : rd.positive_roots) {
      Weight nu = mu;
      for (int k = 0; k < rd.dim; ++k) nu[k] -= a[k];
      if (is_dominant(rd, nu) && dom.insert(nu).second) queue.push_back(nu);
    }
  }
  std::vector<Weight> order(dom.begin(), dom.end());
  auto depth = [&](const Weight& mu) {
    Weight diff = lambda;
    for (int k = 0; k < rd.dim; ++k) diff[k] -= mu[k];
    return pairing(diff, rd.height);
  };
  std::stable_sort(order.begin(), order.end(), [&](const Weight& x, const Weight& y) { return depth(x) < depth(y); });

  Weight lr = lambda;
  for (int k = 0; k < rd.dim; ++k) lr[k] += rd.rho[k];
  const std::int64_t top = inner(rd, lr, lr);
  FormalCharacter mult;
  mult[lambda] = 1;
  for (const Weight& mu : order) {
    if (mu == lambda) continue;
    std::int64_t num = 0;
    for (const auto& a : rd.positive_roots) {
      Weight v = mu;
      for (int step = 1;; ++step) {
        for (int k = 0; k < rd.dim; ++k) v[k] += a[k];
        Weight d = to_dominant(rd, v).dominant;
        auto it = mult.find(d);
        if (it == mult.end()) break;
        num = checked_add(num, checked_mul(it->second, inner(rd, v, a)));
      }
    }
    num = checked_mul(num, 2);
    Weight mr = mu;
    for (int k = 0; k < rd.dim; ++k) mr[k] += rd.rho[k];
    std::int64_t den = top - inner(rd, mr, mr);
    if (den <= 0 || num % den != 0) throw InvariantViolation("Freudenthal recursion produced a non-integer multiplicity");
    mult[mu] = num / den;
  }
  std::lock_guard lock(cache_->mu);
  return cache_->dominant.emplace(lambda, std::move(mult)).first->second;
}

FormalCharacter LieGroup::character(const Weight& lambda) const {
  FormalCharacter out;
  for (const auto& [mu, m] : dominant_character(lambda))
    for (const auto& w : weyl_orbit(*rd_, mu)) out[w] = m;
  return out;
}

std::map<Weight, std::int64_t> LieGroup::tensor_decompose(const Weight& lambda, const Weight& mu) const {
  const RootData& rd = *rd_;
  const bool swap = dimension(mu) > dimension(lambda);
  const Weight& base = swap ? mu : lambda;
  const Weight& expanded = swap ? lambda : mu;
  std::map<Weight, std::int64_t> out;
  for (const auto& [nu, m] : character(expanded)) {
    Weight v = base;
    for (int k = 0; k < rd.dim; ++k) v[k] += nu[k] + rd.rho[k];
    ChamberResult r = to_dominant(rd, v);
    if (r.singular) continue;
    for (int k = 0; k < rd.dim; ++k) r.dominant[k] -= rd.rho[k];
    out[r.dominant] += r.sign * m;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second < 0) throw InvariantViolation("negative multiplicity in Brauer-Klimyk");
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<Weight> LieGroup::irreps_up_to(std::int64_t bound) const {
  const RootData& rd = *rd_;
  // Per-factor candidate blocks with their dimensions.
  std::vector<std::vector<std::pair<Weight, std::int64_t>>> blocks;
  for (int fi = 0; fi < rd.factor_count(); ++fi) {
    int co = rd.factor_coord_offset[fi];
    int d = rd.factor_dim(fi);
    auto dim_of = [&](const Weight& local) {
      Weight w(rd.dim, 0);
      for (int k = 0; k < d; ++k) w[co + k] = local[k];
      return weyl_dimension(rd, w);
    };
    std::vector<std::pair<Weight, std::int64_t>> found;
    if (rd.spec.factors[fi].family == Family::U) {
      Weight cur(d, 0);
      std::function<void(int, std::int64_t)> go = [&](int k, std::int64_t hi) {
        if (k == d) {
          auto dm = dim_of(cur);
          if (dm <= bound) found.emplace_back(cur, dm);
          return;
        }
        for (std::int64_t v = hi; v >= -2; --v) {
          cur[k] = v;
          go(k + 1, v);
        }
      };
      go(0, 2);
    } else {
      std::set<Weight> seen{Weight(d, 0)};
      std::deque<Weight> queue{Weight(d, 0)};
      while (!queue.empty()) {
        Weight w = queue.front();
        queue.pop_front();
        auto dm = dim_of(w);
        if (dm > bound) continue;
        found.emplace_back(w, dm);
        for (int k = 0; k < d; ++k) {
          Weight u = w;
          ++u[k];
          if (seen.insert(u).second) queue.push_back(u);
        }
      }
    }
    blocks.push_back(std::move(found));
  }
  std::vector<std::pair<std::int64_t, Weight>> all;
  Weight cur(rd.dim, 0);
  std::function<void(int, std::int64_t)> combine = [&](int fi, std::int64_t dm) {
    if (fi == rd.factor_count()) {
      all.emplace_back(dm, cur);
      return;
    }
    int co = rd.factor_coord_offset[fi];
    for (const auto& [w, d] : blocks[fi]) {
      if (dm * d > bound) continue;
      for (std::size_t k = 0; k < w.size(); ++k) cur[co + k] = w[k];
      combine(fi + 1, dm * d);
    }
  };
  combine(0, 1);
  std::sort(all.begin(), all.end());
  std::vector<Weight> out;
  for (auto& [d, w] : all) out.push_back(std::move(w));
  return out;
}

const FundamentalPolynomial& LieGroup::fundamental_polynomial(const Weight& lambda) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->polys.find(lambda);
    if (it != cache_->polys.end()) return it->second;
  }
  const RootData& rd = *rd_;
  auto exps = fundamental_exponents(rd, lambda);
  // Highest weight of the inverse determinant of each U(n) factor.
  auto det_inverse = [&](std::size_t idx) {
    Weight w = zero_weight();
    std::size_t acc = 0;
    for (int fi = 0; fi < rd.factor_count(); ++fi) {
      int d = rd.factor_dim(fi);
      if (idx < acc + d) {
        for (int k = 0; k < d; ++k) w[rd.factor_coord_offset[fi] + k] = -1;
        return w;
      }
      acc += d;
    }
    throw InvariantViolation("determinant index out of range");
  };
  std::map<Weight, std::int64_t> product{{zero_weight(), 1}};
  for (std::size_t i = 0; i < exps.size(); ++i) {
    Weight factor = exps[i] >= 0 ? rd.fundamental_weights[i] : det_inverse(i);
    std::int64_t times = exps[i] >= 0 ? exps[i] : -exps[i];
    for (std::int64_t t = 0; t < times; ++t) {
      std::map<Weight, std::int64_t> next;
      for (const auto& [w, m] : product)
        for (const auto& [v, k] : tensor_decompose(w, factor)) next[v] = checked_add(next[v], checked_mul(m, k));
      product = std::move(next);
    }
  }
  if (product[lambda] != 1) throw InvariantViolation("leading term of fundamental product is not simple");
  FundamentalPolynomial poly{{exps, 1}};
  for (const auto& [nu, m] : product) {
    if (nu == lambda) continue;
    for (const auto& [e, c] : fundamental_polynomial(nu)) {
      auto& slot = poly[e];
      slot = checked_add(slot, -checked_mul(m, c));
    }
  }
  for (auto it = poly.begin(); it != poly.end();) it = it->second == 0 ? poly.erase(it) : std::next(it);
  std::lock_guard lock(cache_->mu);
  return cache_->polys.emplace(lambda, std::move(poly)).first->second;
}

}  // namespace krg
