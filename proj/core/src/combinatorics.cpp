#include <freecurve/combinatorics.hpp>

#include <freecurve/errors.hpp>
#include <freecurve/freeness.hpp>

#include <algorithm>
#include <istream>
#include <numeric>
#include <regex>
#include <sstream>

namespace freecurve {

std::string to_string(const WeakCombinatorialType& w) {
  std::ostringstream out;
  out << "k=" << w.k << " n2=" << w.n2 << " n3=" << w.n3 << " t3=" << w.t3 << " t5=" << w.t5
      << " t7=" << w.t7;
  return out.str();
}

std::optional<WeakCombinatorialType> weak_type(const LocusSurvey& survey, std::size_t k) {
  if (!survey.inventory_complete()) return std::nullopt;
  using K = SingularityType::Kind;
  WeakCombinatorialType w;
  w.k = k;
  w.n2 = survey.unlocated_nodes.value_or(0);
  for (const auto& r : survey.records) {
    switch (r.type.kind) {
      case K::A1: ++w.n2; break;
      case K::A3: ++w.t3; break;
      case K::A5: ++w.t5; break;
      case K::A7: ++w.t7; break;
      case K::D4: ++w.n3; break;
      default: return std::nullopt;
    }
  }
  return w;
}

bool bezout_count_check(const WeakCombinatorialType& w) {
  return 2 * w.k * (w.k - 1) == w.n2 + 3 * w.n3 + 2 * w.t3 + 3 * w.t5 + 4 * w.t7;
}

bool EnumerationCertificate::passed() const {
  return counterexamples.empty() && admissible == expected_admissible;
}

namespace {

void check_kmax(std::size_t kmax, std::size_t lowest, const char* theorem) {
  if (kmax < lowest || kmax > kEnumerationLimit)
    throw ValidationError(std::string("theorem ") + theorem + " needs kmax in [" +
                          std::to_string(lowest) + ", " + std::to_string(kEnumerationLimit) + "]");
}

long long ceil_ll(const Rat& q) { return ceil(q).get_si(); }

template <typename Upper>
EnumerationCertificate interval_enumeration(std::string theorem, std::size_t kmax,
                                            std::vector<std::size_t> expected, Upper upper) {
  EnumerationCertificate cert;
  cert.theorem = std::move(theorem);
  cert.kmax = kmax;
  const Rat alpha = conic_class_arnold_exponent();
  for (std::size_t k = 2; k <= kmax; ++k) {
    const KInterval iv{k, ceil_ll(mdr_lower_bound(alpha, 2 * static_cast<unsigned>(k))), upper(k)};
    cert.intervals.push_back(iv);
    if (iv.empty()) continue;
    cert.admissible.push_back(k);
    cert.candidates += static_cast<std::size_t>(iv.hi - iv.lo + 1);
    if (std::find(expected.begin(), expected.end(), k) == expected.end())
      cert.counterexamples.push_back({k, 0, 0, iv.lo});
  }
  expected.erase(std::remove_if(expected.begin(), expected.end(), [kmax](auto k) { return k > kmax; }),
                 expected.end());
  cert.expected_admissible = std::move(expected);
  return cert;
}

}  // namespace

EnumerationCertificate enumerate_theorem_near(std::size_t kmax, unsigned d4_weight) {
  check_kmax(kmax, 2, "near");
  EnumerationCertificate cert;
  cert.theorem = "near";
  cert.kmax = kmax;
  const long long w = d4_weight;
  for (std::size_t k = 2; k <= kmax; ++k) {
    const long long pairs = 2LL * static_cast<long long>(k * (k - 1));
    const long long b = 2LL * static_cast<long long>(k) - 1;
    const long long n3_max = pairs / 3;
    cert.candidates += static_cast<std::size_t>((n3_max + 1) * (b - 1));
    // eta(2k, d1) = n2 + w n3 + 1 with n2 = pairs - 3 n3, solved for n3.
    for (long long d1 = 1; d1 <= b - 1; ++d1) {
      const long long rhs = d1 * d1 - b * d1 + b * b - 1 - pairs;  // = (w - 3) n3
      const auto record = [&](long long n3) {
        cert.counterexamples.push_back(
            {k, static_cast<std::size_t>(pairs - 3 * n3), static_cast<std::size_t>(n3), d1});
      };
      if (w == 3) {
        if (rhs == 0)
          for (long long n3 = 0; n3 <= n3_max; ++n3) record(n3);
        continue;
      }
      if (rhs % (w - 3) != 0) continue;
      const long long n3 = rhs / (w - 3);
      if (n3 >= 0 && n3 <= n3_max) record(n3);
    }
  }
  return cert;
}

Rat conic_class_arnold_exponent() {
  Rat alpha = lct_d(4).lct();
  for (const unsigned k : {1u, 3u, 5u, 7u}) alpha = std::min(alpha, lct_a(k).lct());
  return alpha;
}

EnumerationCertificate enumerate_theorem_char(std::size_t kmax) {
  check_kmax(kmax, 4, "char");
  return interval_enumeration("char", kmax, {2, 3, 4},
                              [](std::size_t k) { return static_cast<long long>(2 * k - 1) / 2; });
}

EnumerationCertificate enumerate_nearly_free_bound(std::size_t kmax) {
  check_kmax(kmax, 8, "nfbound");
  std::vector<std::size_t> expected(7);
  std::iota(expected.begin(), expected.end(), 2);
  return interval_enumeration("nfbound", kmax, expected,
                              [](std::size_t k) { return static_cast<long long>(k); });
}

DArrangementCount d_arrangement_count(const DArrangementType& t) {
  const std::size_t pairs = t.k * (t.k - 1) / 2;
  const std::size_t points = t.n2 + 3 * t.n3 + 6 * t.n4;
  return {t.d * pairs == points, t.d * t.d * pairs == points};
}

void IncidenceStructure::validate() const {
  for (const auto& [id, comps] : through) {
    if (comps.size() < 2)
      throw ValidationError("point " + std::to_string(id) + " lies on fewer than two components");
    if (!comps.empty() && *comps.rbegin() >= components)
      throw ValidationError("point " + std::to_string(id) + " references component " +
                            std::to_string(*comps.rbegin()) + " of " + std::to_string(components));
  }
}

IncidenceStructure parse_incidence(std::istream& in) {
  static const std::regex point_line(R"(\s*point\s+(\d+)\s*:\s*components\s+(\d+(?:\s*,\s*\d+)*)\s*)");
  static const std::regex count_line(R"(\s*components\s+(\d+)\s*)");
  static const std::regex blank(R"(\s*)");
  IncidenceStructure inc;
  std::optional<std::size_t> declared;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::smatch m;
    if (std::regex_match(line, blank)) continue;
    if (std::regex_match(line, m, count_line)) {
      declared = std::stoul(m[1]);
      continue;
    }
    if (!std::regex_match(line, m, point_line))
      throw ParseError(ParseError::Kind::Syntax, lineno,
                       "line " + std::to_string(lineno) + ": expected 'point <id>: components <i,j,...>'");
    const auto id = static_cast<unsigned>(std::stoul(m[1]));
    if (inc.through.count(id))
      throw ValidationError("line " + std::to_string(lineno) + ": duplicate point " + std::to_string(id));
    std::set<std::size_t>& comps = inc.through[id];
    std::istringstream list(m[2]);
    for (std::string item; std::getline(list, item, ',');) comps.insert(std::stoul(item));
  }
  std::size_t inferred = 0;
  for (const auto& [id, comps] : inc.through)
    if (!comps.empty()) inferred = std::max(inferred, *comps.rbegin() + 1);
  inc.components = declared.value_or(inferred);
  inc.validate();
  return inc;
}

IncidenceStructure parse_incidence(const std::string& text) {
  std::istringstream in(text);
  return parse_incidence(in);
}

std::optional<IncidenceStructure> incidence_from_survey(const LocusSurvey& survey, std::size_t k) {
  if (!survey.complete) return std::nullopt;
  IncidenceStructure inc;
  inc.components = k;
  unsigned id = 0;
  for (const auto& r : survey.records) inc.through[id++] = {r.members.begin(), r.members.end()};
  return inc;
}

std::optional<unsigned> is_combinatorially_supersolvable(const IncidenceStructure& inc) {
  const auto shares = [](const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
    return std::any_of(a.begin(), a.end(), [&b](std::size_t c) { return b.count(c) > 0; });
  };
  for (const auto& [p, cp] : inc.through) {
    const bool modular = std::all_of(inc.through.begin(), inc.through.end(),
                                     [&](const auto& q) { return shares(cp, q.second); });
    if (modular) return p;
  }
  return std::nullopt;
}

}  // namespace freecurve
