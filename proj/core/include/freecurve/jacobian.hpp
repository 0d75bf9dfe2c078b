#pragma once

#include <freecurve/linalg.hpp>
#include <freecurve/polynomial.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace freecurve {

enum class LinalgMode { Exact, Modular };

/// A homogeneous form of degree d >= 2 together with its partial derivatives.
/// Squarefreeness of f is the caller's responsibility; a non-reduced f shows up
/// as an unstable Hilbert window.
class JacobianContext {
 public:
  /// Throws ValidationError when deg f < 2.
  explicit JacobianContext(HomogeneousPolynomial f);

  const HomogeneousPolynomial& f() const noexcept { return f_; }
  unsigned degree() const noexcept { return f_.degree(); }
  const std::array<HomogeneousPolynomial, 3>& partials() const noexcept { return partials_; }

  /// Matrix of (a, b, c) -> a f_x + b f_y + c f_z on S_r^3 -> S_{r+d-1}.
  /// Rows follow monomials_of_degree(r + d - 1); columns are three blocks of
  /// monomials_of_degree(r), one per partial.
  RatMatrix syzygy_matrix(unsigned r) const;

 private:
  HomogeneousPolynomial f_;
  std::array<HomogeneousPolynomial, 3> partials_;
};

/// dim M(f)_t = dim S_t - rank(S_{t-d+1}^3 -> S_t).
std::size_t milnor_dim(const JacobianContext& ctx, unsigned t, LinalgMode mode = LinalgMode::Exact);

struct HilbertProfile {
  /// (t, dim M(f)_t) for consecutive t starting at 3d - 6.
  std::vector<std::pair<unsigned, std::size_t>> window;
  /// Common value of the last three window entries, when they agree.
  std::optional<std::size_t> stabilized_value;
  /// Window reads 1, 0, 0: the Milnor algebra of a smooth curve, whose socle
  /// sits exactly in degree 3d - 6. Total Tjurina number is then 0.
  bool smooth = false;
};

/// Evaluates milnor_dim on 3d-6, ..., 3d-4 + extend (concurrently).
HilbertProfile hilbert_profile(const JacobianContext& ctx, unsigned extend = 0,
                               LinalgMode mode = LinalgMode::Exact);

/// Total Tjurina number read off the stabilized Hilbert function. Throws
/// UnstableError when the window does not stabilize.
std::size_t total_tjurina(const JacobianContext& ctx, LinalgMode mode = LinalgMode::Exact);

/// Relation a f_x + b f_y + c f_z = 0 with forms of degree r.
struct SyzygyWitness {
  unsigned r = 0;
  std::array<HomogeneousPolynomial, 3> triple;
};

/// No relation of degree <= d - 2 exists, so mdr(f) >= d - 1.
struct AtLeast {
  unsigned bound = 0;
};

using MdrResult = std::variant<SyzygyWitness, AtLeast>;

/// Dimension of the kernel of syzygy_matrix(r).
std::size_t syzygy_dimension(const JacobianContext& ctx, unsigned r);

/// Searches r = 0, 1, ..., d - 2 and returns the first nonzero kernel vector
/// as a witness, normalized to primitive integer coefficients with the first
/// nonzero coefficient positive.
MdrResult mdr(const JacobianContext& ctx);

bool verify_witness(const JacobianContext& ctx, const SyzygyWitness& w);

}  // namespace freecurve
