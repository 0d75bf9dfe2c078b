#include <doctest.h>

#include <freecurve/errors.hpp>
#include <freecurve/freeness.hpp>
#include <freecurve/parser.hpp>

#include "generators.hpp"

#include <algorithm>
#include <string>
#include <utility>

using namespace freecurve;
using VKind = Verdict::Kind;

namespace {

const char* kPersson = "(x^2+y^2-z^2)*(2*x^2+y^2+2*x*z)*(2*x^2+y^2-2*x*z)";
const char* kDeformed = "(2*x^2+2*y^2+3*x*z+z^2)*(2*x^2+2*y^2-3*x*z+z^2)*(x^2+4*y^2-z^2)";
const char* kCelal = "(-3*x^2+x*y+y*z+z*x)*(-3*y^2+x*y+y*z+z*x)*(-3*z^2+x*y+y*z+z*x)";
const char* kP4 = "(x^2+y^2-z^2)*(2*x^2+y^2+2*x*z)*(x^2+y^2+2*x*z)*(4*x^2+6*y^2+4*x*z-8*z^2)";

struct Curve {
  FreenessReport report;
  LocusSurvey survey;
  CurveData data() const { return {report, survey}; }
};

Curve compute(const std::string& text) {
  const auto parsed = parse_expression(text);
  const JacobianContext ctx(parsed.poly);
  const auto m = mdr(ctx);
  MdrValue d1 = AtLeast{};
  if (const auto* w = std::get_if<SyzygyWitness>(&m)) d1 = w->r;
  else d1 = std::get<AtLeast>(m);
  Curve c{build_report(ctx.degree(), d1, total_tjurina(ctx, LinalgMode::Modular)),
          survey(ConicArrangement::from_polynomials(parsed.factors))};
  return c;
}

// Weights (w1, w2) with i w1 + j w2 = 1 on both monomials x^i y^j of a
// quasi-homogeneous normal form, by Cramer's rule.
std::pair<Rat, Rat> solve_weights(std::pair<int, int> m1, std::pair<int, int> m2) {
  const Rat det = Rat(m1.first * m2.second - m1.second * m2.first);
  REQUIRE(det != 0);
  Rat w1 = Rat(m2.second - m1.second) / det;
  Rat w2 = Rat(m1.first - m2.first) / det;
  return {w1, w2};
}

void check_entry(const LctEntry& e, std::pair<int, int> m1, std::pair<int, int> m2) {
  const auto [w1, w2] = solve_weights(m1, m2);
  CHECK(e.w1 == w1);
  CHECK(e.w2 == w2);
  CHECK(e.lct() == w1 + w2);
  CHECK(e.w1 * m1.first + e.w2 * m1.second == 1);
  CHECK(e.w1 * m2.first + e.w2 * m2.second == 1);
}

}  // namespace

TEST_CASE("build_report examples") {
  const auto celal = build_report(6, 2u, 19);
  CHECK(celal.eta == 19);
  CHECK(celal.nu == 0);
  CHECK(celal.verdict.kind == VKind::Free);

  const auto p4 = build_report(8, 3u, 36);
  CHECK(p4.eta == 37);
  CHECK(p4.nu == 1);
  CHECK(p4.verdict.kind == VKind::NearlyFree);
  CHECK(p4.verdict.to_string() == "NearlyFree");

  const auto pencil = build_report(10, 2u, 64);
  CHECK(pencil.nu == 3);
  CHECK(pencil.verdict.kind == VKind::Neither);
  CHECK(pencil.verdict.to_string() == "Neither(3)");

  const auto unknown = build_report(2, AtLeast{1}, 0);
  CHECK(unknown.verdict.kind == VKind::Indeterminate);
  CHECK_FALSE(unknown.eta.has_value());
  CHECK_FALSE(unknown.notes.empty());

  // nu = 0 past the free range is not a free verdict.
  const auto large = build_report(6, 3u, 19);
  CHECK(large.nu == 0);
  CHECK(large.verdict.kind == VKind::Neither);
  CHECK_FALSE(large.notes.empty());

  CHECK_THROWS_AS(build_report(1, 0u, 0), ValidationError);
}

TEST_CASE("eta symmetry and verdict criteria on random inputs") {
  gen::Gen g(3);
  for (int i = 0; i < 1000; ++i) {
    const unsigned d = static_cast<unsigned>(g.integer(2, 40));
    const unsigned d1 = static_cast<unsigned>(g.integer(0, d - 1));
    CHECK(eta(d, d1) == eta(d, d - 1 - d1));

    // tau near eta, so every verdict kind occurs.
    const long long e = static_cast<long long>(d1) * d1 - static_cast<long long>(d1) * (d - 1) +
                        static_cast<long long>(d - 1) * (d - 1);
    CHECK(eta(d, d1) == e);
    const long long tau = std::max(0LL, e - g.integer(-1, 3));
    const auto r = build_report(d, d1, static_cast<std::size_t>(tau));
    const auto mirror = build_report(d, d - 1 - d1, static_cast<std::size_t>(tau));
    CHECK(r.nu == mirror.nu);

    // (d-1)^2 - d1 (d - d1 - 1) = tau with d1 <= (d-1)/2.
    const long long lhs = static_cast<long long>(d - 1) * (d - 1) -
                          static_cast<long long>(d1) * (static_cast<long long>(d) - d1 - 1);
    const bool free_eq = lhs == tau && 2 * d1 <= d - 1;
    const bool nearly_eq = lhs == tau + 1;
    CHECK((r.verdict.kind == VKind::Free) == free_eq);
    CHECK((r.verdict.kind == VKind::NearlyFree) == nearly_eq);
    if (!free_eq && !nearly_eq) {
      CHECK(r.verdict.kind == VKind::Neither);
      CHECK(r.verdict.nu == lhs - tau);
    }
  }
}

TEST_CASE("lct table against solved weights") {
  for (unsigned k = 1; k <= 10; ++k) check_entry(lct_a(k), {2, 0}, {0, static_cast<int>(k) + 1});
  for (unsigned k = 4; k <= 10; ++k) check_entry(lct_d(k), {static_cast<int>(k) - 1, 0}, {1, 2});
  for (unsigned r = 2; r <= 8; ++r) check_entry(lct_ordinary(r), {static_cast<int>(r), 0}, {0, static_cast<int>(r)});

  CHECK(lct_a(7).lct() == make_rat(5, 8));
  CHECK(lct_a(1).lct() == 1);
  CHECK(lct_a(3).lct() == make_rat(3, 4));
  CHECK(lct_d(4).lct() == make_rat(2, 3));
  CHECK(lct_a(5).lct() == make_rat(2, 3));

  using K = SingularityType::Kind;
  CHECK(lct({K::A7, 2}).lct() == make_rat(5, 8));
  CHECK(lct({K::D4, 3}).lct() == make_rat(2, 3));
  CHECK(lct({K::OrdinaryMultiple, 4}).lct() == make_rat(1, 2));
  CHECK_THROWS_AS(lct({K::OrdinaryMultiple, 5}), UnsupportedTypeError);
  CHECK(lct({K::OrdinaryMultiple, 5}, true).lct() == make_rat(2, 5));
  CHECK_THROWS_AS(lct({K::Descriptor, 3}, true), UnsupportedTypeError);
}

TEST_CASE("mdr lower bound") {
  CHECK(mdr_lower_bound(make_rat(5, 8), 12) == make_rat(11, 2));
  CHECK(mdr_lower_bound(make_rat(5, 8), 10) == make_rat(17, 4));
  CHECK(mdr_lower_bound(Rat(1), 3) == 1);
  CHECK_THROWS_AS(mdr_lower_bound(Rat(0), 6), ValidationError);
  CHECK_THROWS_AS(mdr_lower_bound(make_rat(3, 2), 6), ValidationError);
}

TEST_CASE("bound consistency on the published arrangements") {
  const Curve celal = compute(kCelal);
  const auto bc = check_bound_consistency(celal.report, celal.survey);
  CHECK(bc.alpha == make_rat(2, 3));
  CHECK(bc.bound == 2);
  CHECK(bc.holds == true);

  const Curve p4 = compute(kP4);
  CHECK(exact_value(p4.report.d1) == 3u);
  const auto bp = check_bound_consistency(p4.report, p4.survey);
  CHECK(bp.alpha == make_rat(5, 8));
  CHECK(bp.bound == 3);
  CHECK(bp.holds == true);

  const Curve f = compute(kPersson);
  const auto bf = check_bound_consistency(f.report, f.survey);
  CHECK(bf.alpha == make_rat(5, 8));
  CHECK(bf.bound == make_rat(7, 4));
  CHECK(bf.holds == true);

  // A descriptor point leaves the exponent unknown.
  const Curve ploski = compute("(x*z+x^2+y^2)*(x*z+2*x^2+y^2)*(x*z+3*x^2+y^2)");
  const auto bd = check_bound_consistency(ploski.report, ploski.survey);
  CHECK_FALSE(bd.alpha.has_value());
  CHECK_FALSE(bd.holds.has_value());
}

TEST_CASE("tacnode deformation") {
  const Curve f = compute(kPersson);
  const Curve g = compute(kDeformed);
  REQUIRE(f.report.verdict.kind == VKind::Free);
  CHECK(f.report.tau == 19);
  CHECK(g.report.tau == 18);
  CHECK(exact_value(g.report.d1) == 3u);

  const auto v = check_deformation(f.data(), g.data());
  CHECK(v.hypotheses_hold);
  CHECK(v.failed().empty());
  CHECK(v.after.kind == VKind::NearlyFree);
  CHECK(v.conclusion_confirmed);

  SUBCASE("same curve twice") {
    const auto same = check_deformation(f.data(), f.data());
    CHECK_FALSE(same.hypotheses_hold);
    const auto failed = same.failed();
    CHECK(std::find(failed.begin(), failed.end(), "inventory") != failed.end());
  }
  SUBCASE("eta changed") {
    FreenessReport shifted = g.report;
    shifted.d1 = 1u;
    shifted.eta = eta(6, 1);
    const auto w = check_deformation(f.data(), CurveData{shifted, g.survey});
    const auto failed = w.failed();
    CHECK(failed == std::vector<std::string>{"eta"});
    CHECK_FALSE(w.conclusion_confirmed);
  }
  SUBCASE("original not free") {
    const Curve p4 = compute(kP4);
    const auto w = check_deformation(p4.data(), g.data());
    const auto failed = w.failed();
    CHECK(std::find(failed.begin(), failed.end(), "free") != failed.end());
  }
}
