#pragma once

// Exact root-system, weight-lattice and character arithmetic.
//
// Weights of a simple factor are stored in the fundamental-weight (Dynkin)
// basis; a U(n) factor uses the standard lattice Z^n. Product groups
// concatenate the coordinates of their factors.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace krg {

using Weight = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;
using FormalCharacter = std::map<Weight, std::int64_t>;

enum class Family { SU, Sp, Spin, U, G2, F4, E6, E7, E8 };

struct SimpleFactor {
  Family family;
  int n;

  bool unitary() const { return family == Family::SU || family == Family::U; }
  std::string to_string() const;
  friend bool operator==(const SimpleFactor&, const SimpleFactor&) = default;
};

struct GroupSpec {
  std::vector<SimpleFactor> factors;

  /// Grammar: family letters followed by the rank parameter, "x" between
  /// factors ("SU3", "Sp2", "SU2xSU2", "U3", "E8").
  static GroupSpec parse(std::string_view text);
  std::string to_string() const;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct RootData {
  GroupSpec spec;
  int rank = 0;  // number of simple roots
  int dim = 0;   // number of weight coordinates
  IntMatrix cartan;            // cartan[i][j] = <alpha_i, alpha_j^vee>
  IntMatrix simple_roots;      // weights
  IntMatrix simple_coroots;    // covectors, paired by dot product
  IntMatrix positive_roots;
  IntMatrix positive_coroots;
  IntMatrix form;              // W-invariant integer Gram matrix on weights
  IntMatrix fundamental_weights;
  Weight rho;                  // <rho, alpha_i^vee> = 1 for every simple i
  std::vector<std::int64_t> height;  // covector, positive on every simple root
  IntMatrix w0;                // longest element acting on weight columns
  std::vector<std::vector<int>> diagram_automorphisms;
  std::vector<int> factor_coord_offset;
  std::vector<int> factor_root_offset;

  int factor_count() const { return static_cast<int>(spec.factors.size()); }
  int factor_dim(int f) const;
};

RootData build_root_data(const GroupSpec& spec);

std::int64_t pairing(const Weight& w, const std::vector<std::int64_t>& covector);
std::int64_t inner(const RootData& rd, const Weight& a, const Weight& b);
bool is_dominant(const RootData& rd, const Weight& w);
Weight reflect(const RootData& rd, const Weight& w, int i);
Weight apply_matrix(const IntMatrix& m, const Weight& w);

struct ChamberResult {
  Weight dominant;
  int sign = 1;           // (-1)^(number of reflections)
  bool singular = false;  // the dominant representative lies on a wall
  std::vector<int> word;  // reflections applied, in order
};

/// Reflects w into the dominant chamber with simple reflections.
ChamberResult to_dominant(const RootData& rd, Weight w);

std::int64_t weyl_dimension(const RootData& rd, const Weight& lambda);
Weight dual_highest_weight(const RootData& rd, const Weight& lambda);

/// Exponents of the fundamental representations whose product has highest
/// weight lambda. For U(n) the last entry (determinant) may be negative.
std::vector<std::int64_t> fundamental_exponents(const RootData& rd, const Weight& lambda);

std::string weight_to_string(const Weight& w);

/// Polynomial in the fundamental representations: exponent vector -> coefficient.
using FundamentalPolynomial = std::map<std::vector<std::int64_t>, std::int64_t>;

/// Root data plus memoized representation-theoretic tables. Copies share
/// the cache; all lookups are thread-safe and observably pure.
class LieGroup {
 public:
  explicit LieGroup(const GroupSpec& spec);

  const RootData& root_data() const { return *rd_; }
  const GroupSpec& spec() const { return rd_->spec; }

  std::int64_t dimension(const Weight& lambda) const;
  /// Dominant weights of V(lambda) with multiplicities (Freudenthal).
  const FormalCharacter& dominant_character(const Weight& lambda) const;
  FormalCharacter character(const Weight& lambda) const;
  /// Brauer-Klimyk: V(lambda) (x) V(mu) as highest weight -> multiplicity.
  std::map<Weight, std::int64_t> tensor_decompose(const Weight& lambda, const Weight& mu) const;
  Weight dual(const Weight& lambda) const { return dual_highest_weight(*rd_, lambda); }
  FormalCharacter restrict_to_torus(const Weight& lambda) const { return character(lambda); }

  /// Irreducibles of dimension <= bound, ordered by (dimension, weight).
  /// U(n) factors additionally bound every coordinate by |a_i| <= 2.
  std::vector<Weight> irreps_up_to(std::int64_t bound) const;

  const FundamentalPolynomial& fundamental_polynomial(const Weight& lambda) const;

  Weight zero_weight() const { return Weight(rd_->dim, 0); }

 private:
  struct Cache;
  std::shared_ptr<const RootData> rd_;
  std::shared_ptr<Cache> cache_;
};

/// Weyl orbit of a weight, sorted.
std::vector<Weight> weyl_orbit(const RootData& rd, const Weight& w);

}  // namespace krg
