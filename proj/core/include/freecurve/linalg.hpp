#pragma once

#include <freecurve/rational.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace freecurve {

using RatVector = std::vector<Rat>;

/// Sparse rational matrix. Each row keeps its nonzero entries sorted by column.
class RatMatrix {
 public:
  using Entry = std::pair<std::size_t, Rat>;
  using Row = std::vector<Entry>;

  RatMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_dense(const std::vector<RatVector>& dense);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  /// Stores `value` at (r, c); a zero value erases the entry.
  void set(std::size_t r, std::size_t c, const Rat& value);
  /// Adds `value` to the entry at (r, c).
  void add(std::size_t r, std::size_t c, const Rat& value);
  Rat at(std::size_t r, std::size_t c) const;
  const Row& row(std::size_t r) const { return rows_.at(r); }
  std::size_t nonzeros() const;

  RatMatrix transpose() const;
  RatVector multiply(const RatVector& v) const;

 private:
  std::size_t cols_;
  std::vector<Row> rows_;
};

struct KernelBasis {
  std::size_t dimension = 0;
  /// Linearly independent, each of length cols; scaled to primitive integer
  /// vectors.
  std::vector<RatVector> vectors;
};

/// Exact rank over Q by fraction-free sparse elimination.
std::size_t rank(const RatMatrix& m);

/// Kernel basis with dimension = cols - rank(m).
KernelBasis kernel_basis(const RatMatrix& m);

/// True when m * v is exactly zero.
bool annihilates(const RatMatrix& m, const RatVector& v);

struct CertifiedRank {
  enum class Route { Trivial, Modular, RationalFallback };
  std::size_t rank = 0;
  Route route = Route::Trivial;
  std::size_t primes_used = 0;
};

/// Rank through reduction modulo word-size primes, certified over Q: two
/// primes must agree, and a kernel of the complementary dimension (on the
/// smaller side) is reconstructed over Q and checked to annihilate the
/// matrix exactly. Falls back to `rank` when certification fails.
CertifiedRank rank_certified_detailed(const RatMatrix& m);

inline std::size_t rank_certified(const RatMatrix& m) { return rank_certified_detailed(m).rank; }

}  // namespace freecurve
