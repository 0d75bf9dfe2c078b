#include <doctest.h>

#include <freecurve/combinatorics.hpp>
#include <freecurve/corpus.hpp>
#include <freecurve/errors.hpp>
#include <freecurve/parser.hpp>

#include "generators.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

using namespace freecurve;

namespace {

// Direct scan of eta(2k, d1) = n2 + w n3 + 1 over all splits and d1.
std::set<std::tuple<std::size_t, std::size_t, std::size_t, long long>> brute_near(std::size_t kmax, unsigned w,
                                                                                 std::size_t* candidates) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t, long long>> out;
  *candidates = 0;
  for (std::size_t k = 2; k <= kmax; ++k) {
    const long long pairs = 2 * static_cast<long long>(k) * (k - 1);
    for (long long n3 = 0; 3 * n3 <= pairs; ++n3) {
      const long long n2 = pairs - 3 * n3;
      for (long long d1 = 1; d1 <= 2 * static_cast<long long>(k) - 2; ++d1) {
        ++*candidates;
        const long long b = 2 * static_cast<long long>(k) - 1;
        if (d1 * d1 - d1 * b + b * b == n2 + w * n3 + 1)
          out.emplace(k, static_cast<std::size_t>(n2), static_cast<std::size_t>(n3), d1);
      }
    }
  }
  return out;
}

long long ceil_div(long long a, long long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

bool modular(const IncidenceStructure& inc, unsigned p) {
  for (const auto& [q, comps] : inc.through) {
    const auto& mine = inc.through.at(p);
    bool shares = false;
    for (std::size_t c : comps) shares = shares || mine.count(c);
    if (!shares) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Bezout count check") {
  CHECK(bezout_count_check({.k = 3, .n2 = 2, .t3 = 1, .t7 = 2}));
  CHECK(bezout_count_check({.k = 3, .n3 = 1, .t5 = 3}));
  CHECK(bezout_count_check({.k = 4, .n2 = 8, .t7 = 4}));
  CHECK_FALSE(bezout_count_check({.k = 4, .n2 = 8, .t7 = 3}));
  CHECK(to_string(WeakCombinatorialType{.k = 3, .n3 = 1, .t5 = 3}).find("k=3") != std::string::npos);
}

TEST_CASE("weak types of the corpus satisfy the Bezout count") {
  std::size_t checked = 0;
  for (const CorpusCase& c : corpus_cases()) {
    if (c.components.size() < 2) continue;
    const auto arr = ConicArrangement::from_polynomials(c.components);
    const auto s = survey(arr, c.points, {.assume_qh = c.assume_qh});
    const auto w = weak_type(s, arr.size());
    if (!w) continue;
    CHECK(bezout_count_check(*w));
    ++checked;
  }
  CHECK(checked >= 4);
}

TEST_CASE("theorem near enumeration") {
  const auto two = enumerate_theorem_near(2);
  CHECK(two.passed());
  CHECK(two.counterexamples.empty());
  CHECK(two.candidates == 2 * 2);

  const auto thirty = enumerate_theorem_near(30);
  CHECK(thirty.passed());
  CHECK(thirty.kmax == 30);

  CHECK_THROWS_AS(enumerate_theorem_near(1), ValidationError);
  CHECK_THROWS_AS(enumerate_theorem_near(kEnumerationLimit + 1), ValidationError);
}

TEST_CASE("theorem near enumeration agrees with a direct scan") {
  for (unsigned w : {3u, 4u, 5u}) {
    std::size_t candidates = 0;
    const auto expected = brute_near(40, w, &candidates);
    const auto cert = enumerate_theorem_near(40, w);
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, long long>> got;
    for (const auto& c : cert.counterexamples) got.emplace(c.k, c.n2, c.n3, c.d1);
    CHECK(got == expected);
    CHECK(cert.candidates == candidates);
    CHECK(cert.passed() == expected.empty());
  }
  // The real weight admits no root; a wrong weight of 5 is caught.
  CHECK(enumerate_theorem_near(40, 4).passed());
  CHECK_FALSE(enumerate_theorem_near(40, 5).passed());
}

TEST_CASE("conic class Arnold exponent") { CHECK(conic_class_arnold_exponent() == make_rat(5, 8)); }

TEST_CASE("free arrangement intervals") {
  const auto cert = enumerate_theorem_char(20);
  CHECK(cert.passed());
  CHECK(cert.admissible == std::vector<std::size_t>{2, 3, 4});
  for (const auto& iv : cert.intervals) {
    const long long k = static_cast<long long>(iv.k);
    CHECK(iv.lo == ceil_div(5 * 2 * k - 16, 8));
    CHECK(iv.hi == (2 * k - 1) / 2);
    if (iv.k == 4) {
      CHECK(iv.lo == 3);
      CHECK(iv.hi == 3);
    }
    if (iv.k == 5) {
      CHECK(iv.lo == 5);
      CHECK(iv.hi == 4);
    }
    if (iv.k == 6) {
      CHECK(iv.lo == 6);
      CHECK(iv.hi == 5);
    }
  }
  for (std::size_t kmax : {6u, 7u, 50u, 1000u})
    CHECK(enumerate_theorem_char(kmax).admissible == std::vector<std::size_t>{2, 3, 4});
  CHECK_THROWS_AS(enumerate_theorem_char(3), ValidationError);
}

TEST_CASE("nearly free arrangement intervals") {
  const auto cert = enumerate_nearly_free_bound(20);
  CHECK(cert.passed());
  CHECK(cert.admissible == std::vector<std::size_t>{2, 3, 4, 5, 6, 7, 8});
  for (const auto& iv : cert.intervals) {
    const long long k = static_cast<long long>(iv.k);
    CHECK(iv.lo == ceil_div(5 * 2 * k - 16, 8));
    CHECK(iv.hi == k);
    if (iv.k == 8) CHECK((iv.lo == 8 && iv.hi == 8));
    if (iv.k == 9) CHECK((iv.lo == 10 && iv.hi == 9));
    if (iv.k == 4) CHECK_FALSE(iv.empty());
  }
  for (std::size_t kmax : {9u, 10u, 100u})
    CHECK(enumerate_nearly_free_bound(kmax).admissible == std::vector<std::size_t>{2, 3, 4, 5, 6, 7, 8});
  CHECK_THROWS_AS(enumerate_nearly_free_bound(7), ValidationError);
}

TEST_CASE("curve arrangement count") {
  const auto conics = d_arrangement_count({.d = 2, .k = 3, .n2 = 12});
  CHECK_FALSE(conics.printed);
  CHECK(conics.bezout);
  const auto lines = d_arrangement_count({.d = 1, .k = 3, .n3 = 1});
  CHECK(lines.printed);
  CHECK(lines.bezout);
  const auto cubics = d_arrangement_count({.d = 3, .k = 2, .n2 = 9});
  CHECK_FALSE(cubics.printed);
  CHECK(cubics.bezout);
}

TEST_CASE("incidence parsing") {
  const auto inc = parse_incidence(
      "# two points\n"
      "point 0: components 0,1,2\n"
      "\n"
      "point 7: components 1, 3   # trailing comment\n");
  CHECK(inc.components == 4);
  CHECK(inc.through.at(0) == std::set<std::size_t>{0, 1, 2});
  CHECK(inc.through.at(7) == std::set<std::size_t>{1, 3});

  const auto declared = parse_incidence("components 6\npoint 1: components 0,1\n");
  CHECK(declared.components == 6);

  std::istringstream stream("point 2: components 4,5\n");
  CHECK(parse_incidence(stream).components == 6);

  SUBCASE("syntax errors carry the line") {
    try {
      parse_incidence("point 0: components 0,1\npoint one: components 1,2\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 2);
    }
  }
  SUBCASE("semantic errors") {
    CHECK_THROWS_AS(parse_incidence("point 0: components 0,1\npoint 0: components 1,2\n"), ValidationError);
    CHECK_THROWS_AS(parse_incidence("point 0: components 3\n"), ValidationError);
    CHECK_THROWS_AS(parse_incidence("components 2\npoint 0: components 0,5\n"), ValidationError);
    CHECK_THROWS_AS(parse_incidence("point 0: components 1,1\n"), ValidationError);
  }
}

TEST_CASE("combinatorial supersolvability") {
  CHECK(is_combinatorially_supersolvable(parse_incidence("point 3: components 0,1,2\n")) == 3u);

  std::string pencil;
  for (int p = 0; p < 4; ++p) pencil += "point " + std::to_string(p) + ": components 0,1,2,3,4\n";
  CHECK(is_combinatorially_supersolvable(parse_incidence(pencil)) == 0u);

  std::string nodes;
  unsigned id = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      nodes += "point " + std::to_string(id++) + ": components " + std::to_string(i) + "," + std::to_string(j) + "\n";
  CHECK_FALSE(is_combinatorially_supersolvable(parse_incidence(nodes)).has_value());

  SUBCASE("geometric incidence") {
    const auto arr = ConicArrangement::from_polynomials(
        parse_expression("(x*z+x^2+y^2)*(x*z+2*x^2+y^2)*(x*z+3*x^2+y^2)").factors);
    const auto inc = incidence_from_survey(survey(arr), 3);
    REQUIRE(inc.has_value());
    CHECK(is_combinatorially_supersolvable(*inc) == 0u);
  }
}

TEST_CASE("supersolvability is invariant under relabeling") {
  gen::Gen g(17);
  int with_modular = 0, without = 0;
  for (int trial = 0; trial < 100; ++trial) {
    IncidenceStructure inc;
    inc.components = static_cast<std::size_t>(g.integer(2, 6));
    const auto points = g.integer(1, 6);
    for (long p = 0; p < points; ++p) {
      std::set<std::size_t> s;
      while (s.size() < 2 || g.coin(0.3))
        s.insert(static_cast<std::size_t>(g.integer(0, static_cast<long>(inc.components) - 1)));
      inc.through[static_cast<unsigned>(p * 3 + 1)] = s;
    }
    const auto before = is_combinatorially_supersolvable(inc);
    if (before) CHECK(modular(inc, *before));

    const auto comp_perm = g.permutation(inc.components);
    const auto point_perm = g.permutation(inc.through.size());
    IncidenceStructure relabeled;
    relabeled.components = inc.components;
    std::size_t i = 0;
    for (const auto& [p, comps] : inc.through) {
      std::set<std::size_t> mapped;
      for (std::size_t c : comps) mapped.insert(comp_perm[c]);
      relabeled.through[static_cast<unsigned>(point_perm[i++])] = mapped;
    }
    const auto after = is_combinatorially_supersolvable(relabeled);
    CHECK(before.has_value() == after.has_value());
    if (after) {
      CHECK(modular(relabeled, *after));
      for (const auto& [q, comps] : relabeled.through)
        if (q < *after) CHECK_FALSE(modular(relabeled, q));
    }
    (before ? with_modular : without)++;
  }
  CHECK(with_modular > 0);
  CHECK(without > 0);
}
