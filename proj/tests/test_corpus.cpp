#include <doctest.h>

#include <freecurve/corpus.hpp>
#include <freecurve/errors.hpp>
#include <freecurve/parser.hpp>

#include <algorithm>
#include <set>

using namespace freecurve;

TEST_CASE("corpus lookup") {
  const auto celal = corpus_lookup("celal_three_conics");
  CHECK(celal.name == "celal_three_conics");
  CHECK(celal.f.degree() == 6);
  CHECK(celal.components.size() == 3);

  const auto p3 = corpus_lookup("ploski/3");
  CHECK(p3.parameter == 3);
  CHECK(p3.f.degree() == 6);
  CHECK(corpus_lookup("ploski", 3).f == p3.f);

  CHECK_THROWS_AS(corpus_lookup("no_such_curve"), NotFoundError);
  CHECK_THROWS_AS(corpus_lookup("ploski"), ValidationError);
  CHECK_THROWS_AS(corpus_lookup("ploski/9"), ValidationError);
  CHECK_THROWS_AS(corpus_lookup("ploski/x"), ValidationError);
  CHECK_THROWS_AS(corpus_lookup("celal_three_conics/2"), ValidationError);
}

TEST_CASE("corpus cases are well formed") {
  std::set<std::string> names;
  for (const CorpusCase& c : corpus_cases()) {
    CAPTURE(c.name);
    CHECK(names.insert(c.name).second);
    if (!c.components.empty()) {
      HomogeneousPolynomial product = parse_polynomial("1");
      for (const auto& q : c.components) product = product * q;
      CHECK(product == c.f);
    }
    if (c.expected.d) CHECK(c.expected.d->value == c.f.degree());
    if (c.expected.inventory && c.expected.tau) {
      // Every type in the class has tau = mu = the index (D4 -> 4).
      std::size_t sum = 0;
      bool known = true;
      for (const auto& [type, count] : c.expected.inventory->value) {
        if (type.size() == 2 && (type[0] == 'A' || type[0] == 'D')) sum += count * static_cast<std::size_t>(type[1] - '0');
        else known = false;
      }
      if (known) CHECK(sum == c.expected.tau->value);
    }
    if (c.expected.d && c.expected.d1 && c.expected.tau && c.expected.nu) {
      const long long d = c.expected.d->value, d1 = c.expected.d1->value;
      CHECK(d1 * d1 - d1 * (d - 1) + (d - 1) * (d - 1) - static_cast<long long>(c.expected.tau->value) ==
            c.expected.nu->value);
    }
  }
  CHECK(names.size() >= 20);
}

TEST_CASE("pencil family expectations follow the closed forms") {
  for (long m = 3; m <= 6; ++m) {
    const auto c = corpus_lookup("pencil_four_points", m);
    REQUIRE(c.expected.tau);
    CHECK(c.expected.tau->value == static_cast<std::size_t>(4 * (m - 1) * (m - 1)));
    if (c.expected.nu && c.expected.d1 && c.expected.d1->value == 2)
      CHECK(c.expected.nu->value == 4 - 2 * (2 * m - 1) + (2 * m - 1) * (2 * m - 1) - 4 * (m - 1) * (m - 1));
  }
  for (long m = 2; m <= 5; ++m) {
    const auto c = corpus_lookup("ploski", m);
    const auto& pts = c.expected.points;
    const auto with_mu = std::find_if(pts.begin(), pts.end(), [](const ExpectedPoint& p) { return p.mu.has_value(); });
    REQUIRE(with_mu != pts.end());
    CHECK(with_mu->mu == static_cast<std::size_t>((2 * m - 1) * (2 * m - 1) - m));
  }
}

TEST_CASE("full regression passes") {
  const auto rows = run_regression(std::nullopt);
  CHECK(rows.size() == corpus_cases().size());
  for (const auto& row : rows) {
    CAPTURE(row.name);
    CHECK(row.passed);
    CHECK(row.diffs.empty());
    CHECK_FALSE(row.error.has_value());
  }
}

TEST_CASE("a mutated expectation fails exactly one row") {
  auto cases = std::vector<CorpusCase>{corpus_lookup("celal_three_conics"), corpus_lookup("ploski/2"),
                                       corpus_lookup("pencil_two_points/2")};
  cases[1].expected.tau->value += 1;
  const auto rows = run_regression(cases);
  REQUIRE(rows.size() == 3);
  CHECK(std::count_if(rows.begin(), rows.end(), [](const RegressionRow& r) { return !r.passed; }) == 1);
  CHECK_FALSE(rows[1].passed);
  REQUIRE_FALSE(rows[1].diffs.empty());
  CHECK(std::any_of(rows[1].diffs.begin(), rows[1].diffs.end(), [](const FieldDiff& d) { return d.field == "tau"; }));
}

TEST_CASE("regression subsets") {
  CHECK(run_regression(std::vector<CorpusCase>{}).empty());
  CHECK(run_regression(std::optional<std::vector<std::string>>{std::vector<std::string>{}}).empty());
  const auto rows = run_regression(std::optional<std::vector<std::string>>{{"bogus", "ploski/2"}});
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].passed);
  CHECK(rows[0].error.has_value());
  CHECK(rows[1].passed);
}

TEST_CASE("source labels") {
  CHECK(to_string(Source::Published) == "published");
  CHECK(to_string(Source::Derived) == "derived");
  CHECK(to_string(Source::Trivial) == "trivial");
  const auto p4 = corpus_lookup("p4_four_conics");
  REQUIRE(p4.expected.tau);
  CHECK(p4.expected.tau->source == Source::Published);
}
