#pragma once

// Small random generators for property tests. Seeds are fixed so failures
// reproduce.

#include <freecurve/linalg.hpp>
#include <freecurve/polynomial.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace gen {

using freecurve::Exponent;
using freecurve::HomogeneousPolynomial;
using freecurve::Rat;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rat rational(long bound = 9) {
    Rat q(integer(-bound, bound), integer(1, bound));
    q.canonicalize();
    return q;
  }

  Rat nonzero_rational(long bound = 9) {
    Rat q;
    do q = rational(bound);
    while (q == 0);
    return q;
  }

  /// Each monomial present with probability `density`.
  HomogeneousPolynomial polynomial(unsigned degree, double density = 0.6, long bound = 5) {
    HomogeneousPolynomial f(degree);
    for (const Exponent& e : freecurve::monomials_of_degree(degree))
      if (coin(density)) f = f + rational(bound) * HomogeneousPolynomial::monomial(e);
    return f;
  }

  /// Smooth conic with small integer coefficients.
  HomogeneousPolynomial smooth_conic(long bound = 4) {
    for (;;) {
      HomogeneousPolynomial q(2);
      for (const Exponent& e : freecurve::monomials_of_degree(2))
        q = q + Rat(integer(-bound, bound)) * HomogeneousPolynomial::monomial(e);
      if (!q.is_zero() && freecurve::ConicForm(q).is_smooth()) return q;
    }
  }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng_);
    return p;
  }

  freecurve::RatMatrix matrix(std::size_t rows, std::size_t cols, double density = 0.5, long bound = 5) {
    freecurve::RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (coin(density)) m.set(i, j, rational(bound));
    return m;
  }

  /// rows x cols of rank at most r: product of random rows x r and r x cols.
  freecurve::RatMatrix low_rank(std::size_t rows, std::size_t cols, std::size_t r) {
    const freecurve::RatMatrix a = matrix(rows, r, 0.8), b = matrix(r, cols, 0.8);
    freecurve::RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (const auto& [k, v] : a.row(i))
        for (const auto& [j, w] : b.row(k)) m.add(i, j, v * w);
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
