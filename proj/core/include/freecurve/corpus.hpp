#pragma once

#include <freecurve/combinatorics.hpp>
#include <freecurve/polynomial.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freecurve {

/// Where an expected value comes from: stated in the literature, computed
/// from stated values, or immediate.
enum class Source { Published, Derived, Trivial };

std::string to_string(Source s);

template <typename T>
struct Tagged {
  T value;
  Source source = Source::Derived;
};

struct ExpectedPoint {
  ProjectivePoint point;
  std::optional<std::string> type;
  std::optional<std::size_t> mu;
  std::optional<std::size_t> tau;
  Source source = Source::Derived;
};

struct ExpectedValues {
  std::optional<Tagged<unsigned>> d;
  std::optional<Tagged<unsigned>> d1;
  std::optional<Tagged<std::size_t>> tau;
  std::optional<Tagged<long long>> nu;
  /// Verdict::name().
  std::optional<Tagged<std::string>> verdict;
  /// Singularity type name -> count, unlocated nodes included.
  std::optional<Tagged<std::map<std::string, std::size_t>>> inventory;
  std::vector<ExpectedPoint> points;
  /// Syzygy witness (a, b, c) as canonical polynomial text.
  std::optional<Tagged<std::array<std::string, 3>>> witness;
};

/// A concrete corpus curve.
struct CorpusCase {
  /// Stable identifier: "celal_three_conics" or "ploski/3".
  std::string name;
  std::string family;
  std::optional<long> parameter;
  std::string description;
  HomogeneousPolynomial f;
  /// Components over Q; empty when f does not split into rational conics.
  std::vector<HomogeneousPolynomial> components;
  /// Singular points to examine beyond those found by elimination.
  std::vector<ProjectivePoint> points;
  std::optional<IncidenceStructure> incidence;
  bool assume_qh = false;
  ExpectedValues expected;
  std::vector<std::string> notes;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  /// Parametrized families only.
  std::optional<std::string> parameter_name;
  long parameter_min = 0, parameter_max = 0;

  bool parametrized() const { return parameter_name.has_value(); }
  /// Throws ValidationError when the parameter is missing or out of range.
  CorpusCase instantiate(std::optional<long> parameter = {}) const;
};

const std::vector<CorpusEntry>& corpus_entries();

/// "name" or "name/parameter". Throws NotFoundError for unknown names and
/// ValidationError for bad parameters.
CorpusCase corpus_lookup(const std::string& name);
CorpusCase corpus_lookup(const std::string& name, long parameter);

/// Every instance of every entry, parameters expanded.
std::vector<CorpusCase> corpus_cases();

struct FieldDiff {
  std::string field;
  std::string expected;
  std::string actual;
};

struct RegressionRow {
  std::string name;
  bool passed = false;
  std::vector<FieldDiff> diffs;
  /// Set when the pipeline threw.
  std::optional<std::string> error;
  double seconds = 0;
};

/// Runs the analysis pipeline on each case and compares every expected field.
/// Failures are collected, never thrown.
std::vector<RegressionRow> run_regression(const std::vector<CorpusCase>& cases);
/// By name; nullopt runs the whole corpus. Unknown names become failed rows.
std::vector<RegressionRow> run_regression(const std::optional<std::vector<std::string>>& names);

}  // namespace freecurve
