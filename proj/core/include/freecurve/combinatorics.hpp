#pragma once

#include <freecurve/locus.hpp>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace freecurve {

/// Component count and singularity counts of a conic arrangement with nodes,
/// ordinary triple points and A3 / A5 / A7 points.
struct WeakCombinatorialType {
  std::size_t k = 0;
  std::size_t n2 = 0, n3 = 0, t3 = 0, t5 = 0, t7 = 0;

  friend bool operator==(const WeakCombinatorialType&, const WeakCombinatorialType&) = default;
};

std::string to_string(const WeakCombinatorialType& w);

/// Weak type of a fully inventoried survey; nullopt when the inventory is
/// incomplete or a point lies outside the five types.
std::optional<WeakCombinatorialType> weak_type(const LocusSurvey& survey, std::size_t k);

/// 2k(k-1) = n2 + 3 n3 + 2 t3 + 3 t5 + 4 t7 (pairwise Bezout accounting).
bool bezout_count_check(const WeakCombinatorialType& w);

struct Counterexample {
  std::size_t k = 0;
  std::size_t n2 = 0, n3 = 0;
  long long d1 = 0;
};

/// Closed integer interval [lo, hi] of admissible d1 for one k.
struct KInterval {
  std::size_t k = 0;
  long long lo = 0, hi = 0;
  bool empty() const { return lo > hi; }
};

struct EnumerationCertificate {
  std::string theorem;
  std::size_t kmin = 2, kmax = 2;
  std::vector<Counterexample> counterexamples;
  /// Tuples (k, n2, n3, d1) or (k, d1) examined.
  std::size_t candidates = 0;
  /// Interval-based theorems only.
  std::vector<KInterval> intervals;
  std::vector<std::size_t> admissible;
  /// Expected admissible set (interval-based theorems).
  std::vector<std::size_t> expected_admissible;

  bool passed() const;
};

inline constexpr std::size_t kEnumerationLimit = 10000;

/// Arrangements of k smooth conics with only nodes and ordinary triple points
/// are never nearly free: with tau = n2 + w n3 the equation
/// eta(2k, d1) = tau + 1 has no integer root d1 in [1, 2k-2] for any split
/// n2 = 2k(k-1) - 3 n3. `d4_weight` is the local Tjurina number assigned to
/// an ordinary triple point (4; other values are mutation controls).
/// Throws ValidationError unless 2 <= kmax <= kEnumerationLimit.
EnumerationCertificate enumerate_theorem_near(std::size_t kmax, unsigned d4_weight = 4);

/// Smallest lct among A1, A3, A5, A7, D4, the singularities of the class.
Rat conic_class_arnold_exponent();

/// Free conic arrangements in the class: d1 in
/// [ceil(alpha 2k - 2), floor((2k-1)/2)]; admissible k must be {2, 3, 4}.
/// Requires 4 <= kmax <= kEnumerationLimit.
EnumerationCertificate enumerate_theorem_char(std::size_t kmax);

/// Nearly free conic arrangements in the class: d1 in
/// [ceil(alpha 2k - 2), k]; admissible k must be {2, ..., 8}.
/// Requires 8 <= kmax <= kEnumerationLimit.
EnumerationCertificate enumerate_nearly_free_bound(std::size_t kmax);

/// Arrangement of k curves of degree d meeting only in ordinary points.
struct DArrangementType {
  std::size_t d = 1, k = 2;
  std::size_t n2 = 0, n3 = 0, n4 = 0;
};

struct DArrangementCount {
  /// d C(k,2) = n2 + 3 n3 + 6 n4.
  bool printed = false;
  /// d^2 C(k,2) = n2 + 3 n3 + 6 n4.
  bool bezout = false;
};

DArrangementCount d_arrangement_count(const DArrangementType& t);

/// Singular points and the components through each.
struct IncidenceStructure {
  std::size_t components = 0;
  std::map<unsigned, std::set<std::size_t>> through;

  /// Throws ValidationError when a point lies on fewer than two components
  /// or an index is out of range.
  void validate() const;
};

/// Lines `point <id>: components <i,j,...>` with `#` comments, plus an
/// optional `components <n>` line; otherwise n is one more than the largest
/// index. Throws ParseError (with line number as position) or
/// ValidationError.
IncidenceStructure parse_incidence(std::istream& in);
IncidenceStructure parse_incidence(const std::string& text);

/// Incidence of a survey with every singular point located; records get ids
/// 0, 1, ... in survey order.
std::optional<IncidenceStructure> incidence_from_survey(const LocusSurvey& survey, std::size_t k);

/// Smallest point id sharing a component with every singular point.
std::optional<unsigned> is_combinatorially_supersolvable(const IncidenceStructure& inc);

}  // namespace freecurve
