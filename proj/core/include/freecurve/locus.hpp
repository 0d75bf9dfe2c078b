#pragma once

#include <freecurve/polynomial.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace freecurve {

/// k >= 2 smooth, pairwise non-proportional conics.
class ConicArrangement {
 public:
  /// Throws ValidationError on a violated invariant.
  explicit ConicArrangement(std::vector<ConicForm> components);
  static ConicArrangement from_polynomials(const std::vector<HomogeneousPolynomial>& components);

  const std::vector<ConicForm>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  /// Product of the components.
  HomogeneousPolynomial product() const;

 private:
  std::vector<ConicForm> components_;
};

/// Local graph Y = c2 X^2 + c3 X^3 + c4 X^4 + O(X^5) of a smooth conic at a
/// rational point. The frame (X, Y) comes from the affine chart of the point
/// followed by a rational shear taking the tangent line to Y = 0; it depends
/// only on the point and the tangent, so branches with a common tangent share
/// it.
struct BranchJet {
  ProjectivePoint center;
  /// Tangent line coefficients (the conic's gradient at the center).
  std::array<Rat, 3> tangent;
  /// Local coordinates are swapped (X = v, Y = u) when the tangent is u = 0.
  bool swapped = false;
  /// Shear slope: (u, v) = (X, Y - slope X) when not swapped.
  Rat slope = 0;
  Rat c2 = 0, c3 = 0, c4 = 0;
};

/// Throws ValidationError when p is not on q.
BranchJet branch_jet(const ConicForm& q, const ProjectivePoint& p);

/// Local equation of q in the jet's frame (the shear applied to the chart).
AffinePolynomial local_equation_in_frame(const ConicForm& q, const BranchJet& jet);

/// 1 for distinct tangents, otherwise the order of contact of the two jets.
unsigned local_intersection_multiplicity(const ConicForm& a, const ConicForm& b,
                                         const ProjectivePoint& p);

struct PairIntersection {
  /// Rational common points (normalized) with intersection multiplicities.
  std::vector<std::pair<ProjectivePoint, unsigned>> points;
  /// 4 minus the located multiplicities: intersections at irrational points.
  unsigned residual = 4;
};

/// Eliminates one coordinate with a resultant and extracts the rational roots
/// of the resulting binary quartic. Multiplicities come from the root
/// multiplicities and are cross-checked against jet contact orders.
PairIntersection rational_pair_intersections(const ConicForm& a, const ConicForm& b);

struct SingularityType {
  enum class Kind { A1, A3, A5, A7, D4, OrdinaryMultiple, Descriptor };
  Kind kind = Kind::Descriptor;
  /// Branch count; also the multiplicity of an ordinary point.
  unsigned branches = 0;

  std::string to_string() const;
  bool is_ade() const;
  friend bool operator==(const SingularityType&, const SingularityType&) = default;
};

struct SingularPointRecord {
  ProjectivePoint point;
  /// Indices of the components through the point, ascending.
  std::vector<std::size_t> members;
  /// Symmetric, indexed like `members`; diagonal is 0.
  std::vector<std::vector<unsigned>> pair_mults;
  SingularityType type;
  /// 2 * sum of pairwise multiplicities - r + 1.
  std::size_t mu = 0;
  /// Known for ADE types, ordinary quadruple points, and ordinary points of
  /// higher multiplicity under the quasi-homogeneity assumption.
  std::optional<std::size_t> tau;
  /// Independent values from the local algebra, when requested.
  std::optional<std::size_t> mu_algebra;
  std::optional<std::size_t> tau_algebra;

  /// tau, or the local algebra value when the type does not determine it.
  std::optional<std::size_t> best_tau() const { return tau ? tau : tau_algebra; }
};

struct ClassifyOptions {
  /// Treat ordinary points of multiplicity >= 5 as quasi-homogeneous.
  bool assume_qh = false;
  /// Also compute mu and tau from the local algebra of the product curve.
  bool local_algebra = false;
};

/// Throws ValidationError (NotSingular) when fewer than two components pass
/// through p.
SingularPointRecord classify_point(const ConicArrangement& arr, const ProjectivePoint& p,
                                   const ClassifyOptions& options = {});

struct LocusSurvey {
  /// Sorted by normalized point coordinates.
  std::vector<SingularPointRecord> records;
  /// (i, j) with i < j -> intersection multiplicity not located over Q.
  std::map<std::pair<std::size_t, std::size_t>, unsigned> residual_per_pair;
  bool complete = false;
  /// Number of unlocated (irrational) intersection points proven to be
  /// ordinary nodes: every pair's residual factor of the resultant, taken from
  /// one common projection center, is squarefree and coprime to the others.
  std::optional<std::size_t> unlocated_nodes;
  std::vector<std::string> notes;

  /// Every singular point is accounted for, located or certified as a node.
  bool inventory_complete() const { return complete || unlocated_nodes.has_value(); }
  /// Sum of local tau (best_tau) over the full inventory; nullopt when the
  /// inventory is incomplete or a record has unknown tau.
  std::optional<std::size_t> tau_sum() const;
  std::size_t located_count(SingularityType::Kind kind) const;
  /// Located records of this kind, plus certified nodes for A1; nullopt when
  /// the inventory is incomplete.
  std::optional<std::size_t> count(SingularityType::Kind kind) const;
};

LocusSurvey survey(const ConicArrangement& arr, const std::vector<ProjectivePoint>& extra_points = {},
                   const ClassifyOptions& options = {});

/// Length of the local ring Q[u,v]_(u,v) / (generators). Computed as
/// dim Q[u,v] / (I + m^N) for increasing N until two consecutive values agree,
/// at which point m^N lies in I locally. Throws Error when no stabilization
/// occurs below `max_order` (the origin is not isolated).
std::size_t local_algebra_length(const std::vector<AffinePolynomial>& generators,
                                 unsigned max_order = 160);

struct LocalInvariants {
  std::size_t milnor = 0;
  std::size_t tjurina = 0;
};

/// Local Milnor and Tjurina numbers of f at a rational point p. Both are 0
/// when p is not on the curve.
LocalInvariants local_invariants(const HomogeneousPolynomial& f, const ProjectivePoint& p);

}  // namespace freecurve
