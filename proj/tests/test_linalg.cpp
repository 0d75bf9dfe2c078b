#include <doctest.h>

#include <freecurve/jacobian.hpp>
#include <freecurve/linalg.hpp>
#include <freecurve/parser.hpp>

#include "generators.hpp"

#include <future>

using namespace freecurve;

namespace {

using Dense = std::vector<RatVector>;

Dense dense(const RatMatrix& m) {
  Dense d(m.rows(), RatVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) d[i][j] = v;
  return d;
}

// Cofactor expansion along the first row.
Rat det_by_minors(const Dense& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Rat total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    Dense minor;
    for (std::size_t i = 1; i < n; ++i) {
      RatVector row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    const Rat term = a[0][j] * det_by_minors(minor);
    total += j % 2 ? -term : term;
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Largest k with a nonzero k x k minor.
std::size_t rank_by_minors(const RatMatrix& m) {
  const Dense a = dense(m);
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Dense sub(k, RatVector(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[r[i]][c[j]];
        if (det_by_minors(sub) != 0) return k;
      }
  }
  return 0;
}

RatMatrix permuted(const RatMatrix& m, const std::vector<std::size_t>& rp, const std::vector<std::size_t>& cp) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) out.set(rp[i], cp[j], v);
  return out;
}

RatMatrix hilbert_matrix(std::size_t n) {
  RatMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h.set(i, j, Rat(1, static_cast<unsigned long>(i + j + 1)));
  return h;
}

}  // namespace

TEST_CASE("trivial ranks") {
  CHECK(rank(RatMatrix::identity(3)) == 3);
  CHECK(rank(RatMatrix(4, 7)) == 0);
  CHECK(rank(RatMatrix(0, 0)) == 0);
  CHECK(rank(RatMatrix(0, 5)) == 0);
  CHECK(kernel_basis(RatMatrix(0, 5)).dimension == 5);
  CHECK(kernel_basis(RatMatrix::identity(4)).dimension == 0);
}

TEST_CASE("sparse storage keeps only nonzeros") {
  RatMatrix m(2, 3);
  m.set(0, 1, Rat(3));
  m.set(0, 1, Rat(0));
  CHECK(m.nonzeros() == 0);
  m.add(1, 2, Rat(1, 2));
  m.add(1, 2, Rat(-1, 2));
  CHECK(m.nonzeros() == 0);
  m.set(1, 0, Rat(5));
  CHECK(m.at(1, 0) == 5);
  CHECK(m.transpose().at(0, 1) == 5);
}

TEST_CASE("rank against the minor-expansion oracle") {
  gen::Gen g(21);
  for (int i = 0; i < 40; ++i) {
    RatMatrix m(6, 6);
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 6; ++c) m.set(r, c, Rat(g.integer(-9, 9)));
    CHECK(rank(m) == rank_by_minors(m));
  }
  for (int i = 0; i < 60; ++i) {
    const std::size_t rows = static_cast<std::size_t>(g.integer(1, 5)), cols = static_cast<std::size_t>(g.integer(1, 5));
    const RatMatrix m = g.coin() ? g.matrix(rows, cols, 0.4)
                                 : g.low_rank(rows, cols, static_cast<std::size_t>(g.integer(1, 3)));
    CHECK(rank(m) == rank_by_minors(m));
    CHECK(rank_certified(m) == rank(m));
  }
}

TEST_CASE("Hilbert matrix") {
  const RatMatrix h = hilbert_matrix(5);
  CHECK(det_by_minors(dense(h)) == Rat(1, 266716800000UL));
  CHECK(rank(h) == 5);
  CHECK(rank_certified(h) == 5);
  CHECK(kernel_basis(h).dimension == 0);
}

TEST_CASE("prime-dependent entries") {
  CHECK(rank_certified(RatMatrix::from_dense({{Rat(2)}})) == 1);
  const Rat p(2147483647);  // the first modulus tried
  CHECK(rank_certified(RatMatrix::from_dense({{p}})) == 1);
  CHECK(rank_certified(RatMatrix::from_dense({{p, Rat(0)}, {Rat(0), p * Rat(2147483629)}})) == 2);
  CHECK(rank_certified(RatMatrix::from_dense({{Rat(1), Rat(1)}, {Rat(1), Rat(1) + p}})) == 2);
}

TEST_CASE("kernels") {
  const KernelBasis k = kernel_basis(RatMatrix::from_dense({{Rat(1), Rat(1), Rat(1)}}));
  CHECK(k.dimension == 2);
  for (const auto& v : k.vectors) CHECK(v[0] + v[1] + v[2] == 0);

  gen::Gen g(22);
  for (int i = 0; i < 80; ++i) {
    const std::size_t rows = static_cast<std::size_t>(g.integer(1, 8)), cols = static_cast<std::size_t>(g.integer(1, 8));
    const RatMatrix m = g.low_rank(rows, cols, static_cast<std::size_t>(g.integer(1, 4)));
    const KernelBasis kb = kernel_basis(m);
    CHECK(kb.dimension + rank(m) == cols);
    CHECK(kb.vectors.size() == kb.dimension);
    for (const auto& v : kb.vectors) CHECK(annihilates(m, v));
    // independence: the basis vectors as rows have full rank
    if (kb.dimension) CHECK(rank(RatMatrix::from_dense(kb.vectors)) == kb.dimension);
  }
}

TEST_CASE("syzygy kernel of x^2 y^2 + z^4 contains (x, -y, 0)") {
  const JacobianContext ctx(parse_polynomial("x^2*y^2+z^4"));
  const RatMatrix m = ctx.syzygy_matrix(1);
  RatVector v(m.cols());
  v[monomial_index({1, 0, 0})] = 1;       // a = x
  v[3 + monomial_index({0, 1, 0})] = -1;  // b = -y
  CHECK(annihilates(m, v));
  const KernelBasis kb = kernel_basis(m);
  REQUIRE(kb.dimension >= 1);
  auto rows = kb.vectors;
  rows.push_back(v);
  CHECK(rank(RatMatrix::from_dense(rows)) == kb.dimension);
}

TEST_CASE("rank is invariant under permutations") {
  gen::Gen g(23);
  for (int i = 0; i < 60; ++i) {
    const std::size_t rows = static_cast<std::size_t>(g.integer(1, 12)), cols = static_cast<std::size_t>(g.integer(1, 12));
    const RatMatrix m = g.low_rank(rows, cols, static_cast<std::size_t>(g.integer(1, 6)));
    const std::size_t r = rank(m);
    CHECK(rank(permuted(m, g.permutation(rows), g.permutation(cols))) == r);
    CHECK(rank(m.transpose()) == r);
  }
}

TEST_CASE("certified rank agrees on curve syzygy matrices") {
  std::size_t modular = 0;
  for (const char* f : {"(x^2+y^2-z^2)*(2*x^2+y^2+2*x*z)*(2*x^2+y^2-2*x*z)",
                        "(-3*x^2+x*y+y*z+z*x)*(-3*y^2+x*y+y*z+z*x)*(-3*z^2+x*y+y*z+z*x)",
                        "(x*z+x^2+y^2)*(x*z+2*x^2+y^2)*(x*z+3*x^2+y^2)", "x^3*y^3+z^6"}) {
    const JacobianContext ctx(parse_polynomial(f));
    for (unsigned r = 0; r <= 8; ++r) {
      const RatMatrix m = ctx.syzygy_matrix(r);
      const CertifiedRank cr = rank_certified_detailed(m);
      CHECK(cr.rank == rank(m));
      modular += cr.route == CertifiedRank::Route::Modular;
    }
  }
  CHECK(modular > 0);
}

TEST_CASE("certified rank from several threads") {
  gen::Gen g(404);
  std::vector<RatMatrix> ms;
  std::vector<std::size_t> expected;
  for (int i = 0; i < 8; ++i) {
    ms.push_back(g.low_rank(40, 36, static_cast<std::size_t>(g.integer(5, 30))));
    expected.push_back(rank(ms.back()));
  }
  std::vector<std::future<std::size_t>> jobs;
  for (const auto& m : ms) jobs.push_back(std::async(std::launch::async, [&m] { return rank_certified(m); }));
  for (std::size_t i = 0; i < jobs.size(); ++i) CHECK(jobs[i].get() == expected[i]);
}
