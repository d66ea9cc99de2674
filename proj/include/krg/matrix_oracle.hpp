#pragma once

// Floating-point cross-check for Real/Quaternionic type: solve for an
// antilinear intertwiner S with S conj(rho(sigma g)) S^-1 = rho(g) and read
// the sign of S conj(S).

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "krg/real_structures.hpp"

namespace krg {

using CMatrix = Eigen::MatrixXcd;

/// A representation realized as a functor of the defining matrix.
struct MatrixRealization {
  int defining_dim = 0;
  int dim = 0;
  std::vector<CMatrix> lie_algebra;  // anti-Hermitian basis, defining rep
  std::function<CMatrix(const CMatrix&)> rep;
};

/// g -> J conj(g) J^-1, or g -> g when `identity` is set.
struct MatrixInvolution {
  bool identity = true;
  CMatrix J;
  CMatrix apply(const CMatrix& g) const { return identity ? g : CMatrix(J * g.conjugate() * J.inverse()); }
};

struct OracleResult {
  FieldType type = FieldType::Real;
  double scalar = 0;         // c in S conj(S) = c I, after normalizing |S| = 1
  double residual = 0;       // worst relative residual over all checks
  int intertwiner_dim = 0;
  CMatrix intertwiner;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Defining-representation functors for SU(n)/U(n) (exterior and symmetric
/// powers of the defining representation) and Sp(n) (traceless exterior
/// powers). Single-factor groups only.
std::optional<MatrixRealization> realize(const RootData& rd, const Weight& lambda);
std::optional<MatrixInvolution> matrix_involution(const RootData& rd, const Involution& inv);

CMatrix unitary_exp(const CMatrix& anti_hermitian);

/// Throws OracleError("not irreducible or not self-conjugate") when the
/// intertwiner space is not one-dimensional, OracleError("oracle
/// inconclusive") when residuals exceed tol.
OracleResult matrix_oracle_type(const MatrixRealization& repr, const MatrixInvolution& inv,
                                std::uint64_t seed = 7, double tol = 1e-9, int samples = 20);

}  // namespace krg
