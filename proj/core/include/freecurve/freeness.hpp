#pragma once

#include <freecurve/jacobian.hpp>
#include <freecurve/locus.hpp>
#include <freecurve/rational.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace freecurve {

/// mdr(f), either known exactly or bounded below by an exhausted search.
using MdrValue = std::variant<unsigned, AtLeast>;

std::optional<unsigned> exact_value(const MdrValue& d1);
std::string to_string(const MdrValue& d1);

/// eta(d, d1) = d1^2 - d1 (d - 1) + (d - 1)^2.
long long eta(unsigned d, unsigned d1);

struct Verdict {
  enum class Kind { Free, NearlyFree, Neither, Indeterminate };
  Kind kind = Kind::Indeterminate;
  /// Defect, meaningful for Neither.
  long long nu = 0;
  /// Explanation, meaningful for Indeterminate.
  std::string reason;

  /// "Free", "NearlyFree", "Neither(3)", "Indeterminate(reason)".
  std::string to_string() const;
  std::string name() const;
};

struct FreenessReport {
  unsigned d = 0;
  MdrValue d1 = AtLeast{};
  std::size_t tau = 0;
  /// Set when d1 is known.
  std::optional<long long> eta;
  std::optional<long long> nu;
  Verdict verdict;
  std::vector<std::string> notes;
  /// Minimum lct over the singular points; filled in by the caller from a
  /// survey (see check_bound_consistency).
  std::optional<Rat> arnold_exponent;
  std::optional<Rat> mdr_lower_bound;
};

/// Applies the free / nearly free criteria. Free requires nu = 0 and
/// 2 d1 <= d - 1; nu = 0 with larger d1 is reported as Neither with a note.
/// Throws ValidationError when d < 2.
FreenessReport build_report(unsigned d, MdrValue d1, std::size_t tau);

/// Quasi-homogeneous weights (w1, w2; 1) of a normal form and lct = w1 + w2.
struct LctEntry {
  std::string sing_type;
  Rat w1, w2;
  Rat lct() const { return w1 + w2; }
};

/// A_k: x^2 + y^(k+1), k >= 1.
LctEntry lct_a(unsigned k);
/// D_k: y^2 x + x^(k-1), k >= 4.
LctEntry lct_d(unsigned k);
/// Ordinary r-fold point, r >= 2.
LctEntry lct_ordinary(unsigned r);
/// Table lookup for classified types. Ordinary points of multiplicity >= 5
/// need `assume_qh`; descriptors are unsupported. Throws UnsupportedTypeError.
LctEntry lct(const SingularityType& type, bool assume_qh = false);

/// alpha d - 2. Throws ValidationError unless 0 < alpha <= 1.
Rat mdr_lower_bound(const Rat& alpha, unsigned d);

struct BoundCheck {
  std::optional<Rat> alpha;
  std::optional<Rat> bound;
  /// d1 >= bound; unset when alpha or d1 is unknown.
  std::optional<bool> holds;
  std::string note;
};

/// Arnold exponent of a fully inventoried survey (certified unlocated nodes
/// count as A1) and the resulting bound on d1.
BoundCheck check_bound_consistency(const FreenessReport& report, const LocusSurvey& survey,
                                   bool assume_qh = false);

struct ClauseStatus {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Tacnode-to-two-nodes deformation of a free curve: inventory, tau, eta and
/// the freeness of the original are hypotheses; NearlyFree is the conclusion.
struct DeformationVerdict {
  /// In order: free, inventory, tau, eta.
  std::vector<ClauseStatus> hypotheses;
  bool hypotheses_hold = false;
  /// The deformed curve's own verdict.
  Verdict after;
  /// after is NearlyFree, as the theorem predicts; only meaningful when the
  /// hypotheses hold.
  bool conclusion_confirmed = false;

  /// Names of the failed hypotheses.
  std::vector<std::string> failed() const;
};

struct CurveData {
  const FreenessReport& report;
  const LocusSurvey& survey;
};

DeformationVerdict check_deformation(const CurveData& before, const CurveData& after);

}  // namespace freecurve
