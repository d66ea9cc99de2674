#include "krg/matrix_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "krg/error.hpp"

namespace krg {

namespace {

using cd = std::complex<double>;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// (g (x) ... (x) g) x, one tensor slot at a time, without forming the d^k square matrix.
CMatrix apply_tensor_power(const CMatrix& g, int k, CMatrix x) {
  const Eigen::Index d = g.rows();
  Eigen::Index after = x.rows();
  for (int slot = 0; slot < k; ++slot) {
    after /= d;
    const Eigen::Index before = x.rows() / (after * d);
    CMatrix y = CMatrix::Zero(x.rows(), x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      for (Eigen::Index a = 0; a < before; ++a)
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index j = 0; j < d; ++j) {
            const cd gij = g(i, j);
            if (gij == cd(0)) continue;
            for (Eigen::Index b = 0; b < after; ++b) y((a * d + i) * after + b, c) += gij * x((a * d + j) * after + b, c);
          }
    x = std::move(y);
  }
  return x;
}

Eigen::Index tuple_index(const std::vector<int>& t, int d) {
  Eigen::Index idx = 0;
  for (int x : t) idx = idx * d + x;
  return idx;
}

int inversions(const std::vector<int>& t) {
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) n += t[i] > t[j];
  return n;
}

// Orthonormal basis of the (anti)symmetric tensors inside (C^d)^{(x)k}.
CMatrix power_basis(int d, int k, bool alternating) {
  std::vector<std::vector<int>> tuples;
  std::vector<int> t(k, 0);
  // nondecreasing (symmetric) or strictly increasing (alternating) tuples
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos == k) {
      tuples.push_back(t);
      return;
    }
    for (int v = lo; v < d; ++v) {
      t[pos] = v;
      rec(pos + 1, alternating ? v + 1 : v);
    }
  };
  rec(0, 0);
  Eigen::Index total = 1;
  for (int i = 0; i < k; ++i) total *= d;
  CMatrix basis = CMatrix::Zero(total, static_cast<Eigen::Index>(tuples.size()));
  for (std::size_t c = 0; c < tuples.size(); ++c) {
    std::vector<int> p = tuples[c];
    int count = 0;
    do {
      double sign = alternating && inversions(p) % 2 ? -1.0 : 1.0;
      basis(tuple_index(p, d), static_cast<Eigen::Index>(c)) += sign;
      ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    basis.col(static_cast<Eigen::Index>(c)) /= std::sqrt(static_cast<double>(count));
  }
  return basis;
}

CMatrix symplectic_form(int n) {
  CMatrix j = CMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = CMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -CMatrix::Identity(n, n);
  return j;
}

// Kernel of the contraction of the first two tensor slots with the form j.
CMatrix traceless_part(const CMatrix& basis, const CMatrix& j, int d, int k) {
  Eigen::Index rest = 1;
  for (int i = 2; i < k; ++i) rest *= d;
  CMatrix contraction = CMatrix::Zero(rest, basis.rows());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (Eigen::Index r = 0; r < rest; ++r) contraction(r, (a * d + b) * rest + r) = j(a, b);
  CMatrix m = contraction * basis;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-10;
  CMatrix kernel = svd.matrixV().rightCols(basis.cols() - rank);
  return basis * kernel;
}

std::vector<CMatrix> unitary_algebra(int n, bool with_center) {
  std::vector<CMatrix> out;
  const cd i(0, 1);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      CMatrix x = CMatrix::Zero(n, n);
      x(a, b) = 1;
      x(b, a) = -1;
      out.push_back(x);
      CMatrix y = CMatrix::Zero(n, n);
      y(a, b) = i;
      y(b, a) = i;
      out.push_back(y);
    }
  for (int a = 0; a + 1 < n; ++a) {
    CMatrix h = CMatrix::Zero(n, n);
    h(a, a) = i;
    h(a + 1, a + 1) = -i;
    out.push_back(h);
  }
  if (with_center) out.push_back(i * CMatrix::Identity(n, n));
  return out;
}

std::vector<CMatrix> symplectic_algebra(int n) {
  CMatrix j = symplectic_form(n), jinv = j.inverse();
  std::vector<CMatrix> out;
  for (const CMatrix& x : unitary_algebra(2 * n, false)) {
    CMatrix p = 0.5 * (x + jinv * x.conjugate() * j);
    if (p.norm() > 1e-12) out.push_back(p);
  }
  return out;
}

// lambda as (k, m): k-th fundamental (k >= 1, m == 1) or m times the first.
std::optional<std::pair<int, int>> simple_shape(const Weight& dynkin) {
  int nonzero = 0, pos = -1;
  for (std::size_t i = 0; i < dynkin.size(); ++i)
    if (dynkin[i] != 0) {
      ++nonzero;
      pos = static_cast<int>(i);
    }
  if (nonzero == 0) return std::pair{0, 0};
  if (nonzero != 1 || dynkin[pos] < 0) return std::nullopt;
  if (dynkin[pos] == 1) return std::pair{pos + 1, 1};
  if (pos == 0) return std::pair{1, static_cast<int>(dynkin[pos])};
  return std::nullopt;
}

}  // namespace

CMatrix unitary_exp(const CMatrix& x) {
  CMatrix h = cd(0, -1) * x;
  h = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXcd phases = (cd(0, 1) * es.eigenvalues().cast<cd>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::optional<MatrixRealization> realize(const RootData& rd, const Weight& lambda) {
  if (rd.factor_count() != 1) return std::nullopt;
  const SimpleFactor& f = rd.spec.factors[0];
  int d;
  std::vector<CMatrix> algebra;
  CMatrix form;
  std::optional<std::pair<int, int>> shape;
  if (f.family == Family::SU) {
    d = f.n;
    algebra = unitary_algebra(d, false);
    shape = simple_shape(lambda);
  } else if (f.family == Family::U) {
    d = f.n;
    algebra = unitary_algebra(d, true);
    // (1^k, 0...) and (m, 0...); other powers of det are not covered
    if (std::all_of(lambda.begin(), lambda.end(), [](std::int64_t x) { return x == 0 || x == 1; })) {
      int k = static_cast<int>(std::count(lambda.begin(), lambda.end(), 1));
      shape = std::pair{k, k ? 1 : 0};
    } else if (lambda[0] > 1 && std::all_of(lambda.begin() + 1, lambda.end(), [](std::int64_t x) { return x == 0; })) {
      shape = std::pair{1, static_cast<int>(lambda[0])};
    }
  } else if (f.family == Family::Sp) {
    d = 2 * f.n;
    algebra = symplectic_algebra(f.n);
    form = symplectic_form(f.n);
    shape = simple_shape(lambda);
  } else {
    return std::nullopt;
  }
  if (!shape) return std::nullopt;
  auto [k, m] = *shape;
  bool alternating = m == 1;
  int power = alternating ? k : m;
  if (std::pow(static_cast<double>(d), power) > 4096) return std::nullopt;

  CMatrix basis = power == 0 ? CMatrix(CMatrix::Identity(1, 1)) : power_basis(d, power, alternating);
  if (f.family == Family::Sp && alternating && power >= 2) basis = traceless_part(basis, form, d, power);

  MatrixRealization r;
  r.defining_dim = d;
  r.dim = static_cast<int>(basis.cols());
  r.lie_algebra = std::move(algebra);
  r.rep = [basis, power](const CMatrix& g) -> CMatrix {
    if (power == 0) return CMatrix::Identity(1, 1);
    return basis.adjoint() * apply_tensor_power(g, power, basis);
  };
  return r;
}

std::optional<MatrixInvolution> matrix_involution(const RootData& rd, const Involution& inv) {
  if (rd.factor_count() != 1 || inv.kinds.size() != 1) return std::nullopt;
  const SimpleFactor& f = rd.spec.factors[0];
  MatrixInvolution mi;
  switch (inv.kinds[0]) {
    case InvolutionKind::Trivial:
      if (f.unitary() || f.family == Family::Sp) return mi;
      return std::nullopt;
    case InvolutionKind::SigmaR:
      if (!f.unitary()) return std::nullopt;
      mi.identity = false;
      mi.J = CMatrix::Identity(f.n, f.n);
      return mi;
    case InvolutionKind::SigmaH:
      if (!f.unitary() || f.n % 2) return std::nullopt;
      mi.identity = false;
      mi.J = symplectic_form(f.n / 2);
      return mi;
    default:
      return std::nullopt;
  }
}

OracleResult matrix_oracle_type(const MatrixRealization& repr, const MatrixInvolution& inv, std::uint64_t seed,
                                double tol, int samples) {
  const int d = repr.dim;
  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
  const CMatrix id = CMatrix::Identity(d, d);

  auto constraint = [&](const CMatrix& g) {
    CMatrix a = repr.rep(g);
    CMatrix m = repr.rep(inv.apply(g)).conjugate();
    return CMatrix(kron(id, a) - kron(m.transpose(), id));
  };

  CMatrix normal = CMatrix::Zero(d2, d2);
  for (const CMatrix& x : repr.lie_algebra) {
    CMatrix k = constraint(unitary_exp(0.9 * x));
    normal += k.adjoint() * k;
  }
  normal = 0.5 * (normal + normal.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(normal);
  const auto& ev = es.eigenvalues();
  double scale = std::max(1.0, ev(d2 - 1));
  int nullity = 0;
  for (Eigen::Index i = 0; i < d2; ++i) nullity += ev(i) < 1e-10 * scale;
  if (nullity != 1) throw OracleError("not irreducible or not self-conjugate (intertwiner space of dimension " +
                                      std::to_string(nullity) + ")");

  CMatrix s = Eigen::Map<const CMatrix>(es.eigenvectors().col(0).data(), d, d);
  s *= std::sqrt(static_cast<double>(d)) / s.norm();

  OracleResult res;
  res.intertwiner_dim = nullity;
  CMatrix p = s * s.conjugate();
  cd c = p.trace() / static_cast<double>(d);
  res.residual = (p - c * id).norm() / (std::abs(c) * std::sqrt(static_cast<double>(d)));
  res.residual = std::max(res.residual, std::abs(c.imag()) / std::abs(c));
  res.scalar = c.real();
  res.type = c.real() > 0 ? FieldType::Real : FieldType::Quaternionic;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal_dist;
  for (int t = 0; t < samples; ++t) {
    CMatrix x = CMatrix::Zero(repr.defining_dim, repr.defining_dim);
    for (const CMatrix& b : repr.lie_algebra) x += normal_dist(rng) * b;
    CMatrix g = unitary_exp(x);
    CMatrix lhs = repr.rep(g) * s, rhs = s * repr.rep(inv.apply(g)).conjugate();
    res.residual = std::max(res.residual, (lhs - rhs).norm() / s.norm());
  }
  if (!(res.residual < tol)) throw OracleError("oracle inconclusive (residual " + std::to_string(res.residual) + ")");
  res.intertwiner = std::move(s);
  return res;
}

}  // namespace krg
