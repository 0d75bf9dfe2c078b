#pragma once

#include <freecurve/combinatorics.hpp>
#include <freecurve/corpus.hpp>
#include <freecurve/freeness.hpp>
#include <freecurve/jacobian.hpp>
#include <freecurve/locus.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace freecurve {

inline constexpr const char* kReportSchema = "freecurve.report/1";

/// A curve to analyze, with optional structure: rational factors, hint
/// points and an explicit incidence.
struct CurveInput {
  std::string label;
  HomogeneousPolynomial f;
  std::vector<HomogeneousPolynomial> components;
  std::vector<ProjectivePoint> points;
  std::optional<IncidenceStructure> incidence;
  bool assume_qh = false;
  std::optional<CorpusCase> corpus;
};

CurveInput input_from_expression(const std::string& text, std::string label = "inline");
/// One component per line, `#` comments.
CurveInput input_from_arrangement(const std::string& text, std::string label);
CurveInput input_from_corpus(const CorpusCase& c);

/// `corpus:<name>`, a file path, or an inline expression. A file with more
/// than one expression line is read as an arrangement.
CurveInput load_input(const std::string& argument);

/// Projective points, one per line, written `(a:b:c)` or `a b c`.
std::vector<ProjectivePoint> parse_points(const std::string& text);

struct AnalysisOptions {
  bool assume_qh = false;
  LinalgMode linalg = LinalgMode::Exact;
  unsigned window_extend = 0;
  std::vector<ProjectivePoint> extra_points;
  bool supersolvable = false;
};

struct LocalPointData {
  ProjectivePoint point;
  std::size_t milnor = 0;
  std::size_t tjurina = 0;
};

struct SupersolvabilityCheck {
  /// "geometric" or "user-incidence".
  std::string mode;
  bool evaluated = false;
  std::optional<unsigned> modular_point;
  std::string note;
};

struct AnalysisReport {
  std::string label;
  HomogeneousPolynomial f;
  unsigned degree = 0;
  std::vector<HomogeneousPolynomial> components;

  MdrResult mdr;
  bool witness_verified = false;
  HilbertProfile hilbert;
  std::optional<FreenessReport> freeness;
  BoundCheck bound;

  std::optional<LocusSurvey> survey;
  std::vector<LocalPointData> local_points;

  std::optional<WeakCombinatorialType> weak_type;
  std::optional<bool> count_ok;
  /// Sum of local tau over the full inventory (or supplied points) against
  /// the global value.
  std::optional<std::size_t> local_tau_sum;
  std::optional<bool> local_matches_global;
  std::optional<SupersolvabilityCheck> supersolvable;

  std::vector<std::string> notes;

  std::optional<std::size_t> tau() const { return hilbert.stabilized_value; }
  MdrValue d1() const;
  /// Type name -> count with certified nodes folded into A1; nullopt when
  /// the inventory is incomplete.
  std::optional<std::map<std::string, std::size_t>> inventory() const;
  /// 0 on success, 2 when tau is unstable or the verdict indeterminate.
  int exit_code() const;
};

/// Full pipeline: mdr, Hilbert window, verdict, survey (for conic
/// arrangements), local data at supplied points and consistency checks.
AnalysisReport analyze(const CurveInput& input, const AnalysisOptions& options = {});

nlohmann::json to_json(const AnalysisReport& r);
nlohmann::json to_json(const LocusSurvey& s);
nlohmann::json to_json(const EnumerationCertificate& c);
nlohmann::json to_json(const DeformationVerdict& v);
nlohmann::json to_json(const std::vector<RegressionRow>& rows);

std::string render_text(const AnalysisReport& r);
std::string render_text(const LocusSurvey& s);
std::string render_text(const EnumerationCertificate& c);
std::string render_text(const DeformationVerdict& v);
std::string render_text(const std::vector<RegressionRow>& rows);

}  // namespace freecurve
