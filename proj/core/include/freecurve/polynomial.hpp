#pragma once

#include <freecurve/rational.hpp>

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace freecurve {

enum class Var { x = 0, y = 1, z = 2 };

/// Exponent triple (i, j, k) of x^i y^j z^k.
using Exponent = std::array<unsigned, 3>;

inline unsigned total_degree(const Exponent& e) { return e[0] + e[1] + e[2]; }

/// Graded lexicographic order with x > y > z. `MonomialOrder(a, b)` is true
/// when a comes first, i.e. a is the larger monomial.
struct MonomialOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// All exponents of degree `degree`, in MonomialOrder. This is the column
/// indexing used for every graded coefficient matrix.
std::vector<Exponent> monomials_of_degree(unsigned degree);

/// dim S_t = (t+2)(t+1)/2.
inline std::size_t monomial_count(unsigned degree) {
  return static_cast<std::size_t>(degree + 2) * (degree + 1) / 2;
}

/// Position of `e` in monomials_of_degree(total_degree(e)).
std::size_t monomial_index(const Exponent& e);

using ProjectivePoint = std::array<Rat, 3>;

/// Scales a point so that its last nonzero coordinate is 1.
ProjectivePoint normalize_point(const ProjectivePoint& p);
std::string to_string(const ProjectivePoint& p);

class AffinePolynomial;

/// Homogeneous form in Q[x, y, z]. The zero polynomial keeps a declared
/// degree so graded maps stay well typed.
class HomogeneousPolynomial {
 public:
  using Terms = std::map<Exponent, Rat, MonomialOrder>;

  explicit HomogeneousPolynomial(unsigned degree = 0) : degree_(degree) {}
  /// Throws std::invalid_argument when a term has the wrong degree. Zero
  /// coefficients are dropped.
  HomogeneousPolynomial(unsigned degree, const Terms& terms);

  static HomogeneousPolynomial monomial(const Exponent& e, const Rat& coeff = 1);
  static HomogeneousPolynomial variable(Var v) {
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(v)] = 1;
    return monomial(e);
  }

  unsigned degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  Rat coefficient(const Exponent& e) const;

  Rat evaluate(const ProjectivePoint& p) const;
  HomogeneousPolynomial derivative(Var v) const;
  HomogeneousPolynomial pow(unsigned n) const;

  /// Canonical text, parseable by parse_polynomial. Zero prints as "0".
  std::string to_string() const;

  HomogeneousPolynomial operator-() const;
  friend HomogeneousPolynomial operator+(const HomogeneousPolynomial& a,
                                         const HomogeneousPolynomial& b);
  friend HomogeneousPolynomial operator-(const HomogeneousPolynomial& a,
                                         const HomogeneousPolynomial& b);
  friend HomogeneousPolynomial operator*(const HomogeneousPolynomial& a,
                                         const HomogeneousPolynomial& b);
  friend HomogeneousPolynomial operator*(const Rat& c, const HomogeneousPolynomial& a);
  friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  unsigned degree_;
  Terms terms_;
};

inline HomogeneousPolynomial partial_derivative(const HomogeneousPolynomial& f, Var v) {
  return f.derivative(v);
}

/// Polynomial in two local coordinates (u, v), stored by exponent pair.
class AffinePolynomial {
 public:
  using Exponent2 = std::pair<unsigned, unsigned>;
  /// Ordered by total degree, then by u-degree descending.
  struct Order {
    bool operator()(const Exponent2& a, const Exponent2& b) const {
      const unsigned da = a.first + a.second, db = b.first + b.second;
      if (da != db) return da < db;
      return a.first > b.first;
    }
  };
  using Terms = std::map<Exponent2, Rat, Order>;

  AffinePolynomial() = default;
  explicit AffinePolynomial(const Terms& terms);
  static AffinePolynomial constant(const Rat& c);
  static AffinePolynomial u();
  static AffinePolynomial v();

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rat coefficient(unsigned i, unsigned j) const;
  Rat constant_term() const { return coefficient(0, 0); }
  /// Lowest total degree of a nonzero term; nullopt for the zero polynomial.
  std::optional<unsigned> order() const;
  unsigned degree() const;

  AffinePolynomial derivative_u() const;
  AffinePolynomial derivative_v() const;
  AffinePolynomial pow(unsigned n) const;
  /// Substitutes u -> U, v -> V.
  AffinePolynomial compose(const AffinePolynomial& U, const AffinePolynomial& V) const;
  /// Drops all terms of total degree >= n.
  AffinePolynomial truncate(unsigned n) const;
  Rat evaluate(const Rat& u, const Rat& v) const;

  std::string to_string() const;

  friend AffinePolynomial operator+(const AffinePolynomial& a, const AffinePolynomial& b);
  friend AffinePolynomial operator-(const AffinePolynomial& a, const AffinePolynomial& b);
  friend AffinePolynomial operator*(const AffinePolynomial& a, const AffinePolynomial& b);
  friend AffinePolynomial operator*(const Rat& c, const AffinePolynomial& a);
  friend bool operator==(const AffinePolynomial& a, const AffinePolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

/// Chart used by dehomogenize: the coordinate set to 1 and the two
/// remaining coordinates, in order, that become (u, v).
struct AffineChart {
  std::size_t chart;
  std::array<std::size_t, 2> local;
};

/// Picks z if nonzero, else y, else x.
AffineChart chart_for(const ProjectivePoint& p);

/// Local equation of f centered at p: the chart coordinate is set to 1 and
/// p is translated to (u, v) = (0, 0).
AffinePolynomial dehomogenize(const HomogeneousPolynomial& f, const ProjectivePoint& p);

/// Quadratic form stored as its symmetric 3x3 matrix.
class ConicForm {
 public:
  using Matrix = std::array<std::array<Rat, 3>, 3>;

  /// Throws ValidationError unless `q` has degree 2 and is nonzero.
  explicit ConicForm(const HomogeneousPolynomial& q);

  const Matrix& matrix() const noexcept { return matrix_; }
  const HomogeneousPolynomial& polynomial() const noexcept { return poly_; }
  Rat determinant() const;
  bool is_smooth() const { return determinant() != 0; }
  Rat evaluate(const ProjectivePoint& p) const { return poly_.evaluate(p); }
  /// Gradient (dq/dx, dq/dy, dq/dz) at p.
  std::array<Rat, 3> gradient(const ProjectivePoint& p) const;

  /// True when one form is a nonzero rational multiple of the other.
  bool proportional_to(const ConicForm& other) const;

 private:
  HomogeneousPolynomial poly_;
  Matrix matrix_;
};

inline bool conic_is_smooth(const ConicForm& q) { return q.is_smooth(); }

}  // namespace freecurve
