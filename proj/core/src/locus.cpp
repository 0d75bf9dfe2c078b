#include <freecurve/locus.hpp>

#include <freecurve/errors.hpp>
#include <freecurve/linalg.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace freecurve {

// ---------------------------------------------------------------------------
// ConicArrangement

ConicArrangement::ConicArrangement(std::vector<ConicForm> components)
    : components_(std::move(components)) {
  if (components_.size() < 2)
    throw ValidationError("a conic arrangement needs at least 2 components");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!components_[i].is_smooth())
      throw ValidationError("component " + std::to_string(i + 1) + " (" +
                            components_[i].polynomial().to_string() + ") is not a smooth conic");
    for (std::size_t j = 0; j < i; ++j)
      if (components_[i].proportional_to(components_[j]))
        throw ValidationError("components " + std::to_string(j + 1) + " and " +
                              std::to_string(i + 1) + " coincide; the curve is not reduced");
  }
}

ConicArrangement ConicArrangement::from_polynomials(
    const std::vector<HomogeneousPolynomial>& components) {
  std::vector<ConicForm> forms;
  forms.reserve(components.size());
  for (const auto& c : components) forms.emplace_back(c);
  return ConicArrangement(std::move(forms));
}

HomogeneousPolynomial ConicArrangement::product() const {
  HomogeneousPolynomial out = HomogeneousPolynomial::monomial({0, 0, 0});
  for (const auto& c : components_) out = out * c.polynomial();
  return out;
}

// ---------------------------------------------------------------------------
// Branch jets

namespace {

bool proportional(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
  return a[0] * b[1] == a[1] * b[0] && a[0] * b[2] == a[2] * b[0] && a[1] * b[2] == a[2] * b[1];
}

// Frame change (u, v) -> (X, Y) applied to a local equation.
AffinePolynomial to_frame(const AffinePolynomial& g, bool swapped, const Rat& slope) {
  const AffinePolynomial X = AffinePolynomial::u(), Y = AffinePolynomial::v();
  if (swapped) return g.compose(Y, X);
  return g.compose(X, Y - slope * X);
}

}  // namespace

BranchJet branch_jet(const ConicForm& q, const ProjectivePoint& p) {
  if (q.evaluate(p) != 0)
    throw ValidationError("point " + to_string(p) + " is not on the conic " + q.polynomial().to_string());
  BranchJet jet;
  jet.center = normalize_point(p);
  jet.tangent = q.gradient(jet.center);

  const AffinePolynomial g = dehomogenize(q.polynomial(), jet.center);
  const Rat gu = g.coefficient(1, 0), gv = g.coefficient(0, 1);
  if (gu == 0 && gv == 0) throw ValidationError("conic is singular at " + to_string(p));
  jet.swapped = gv == 0;
  jet.slope = jet.swapped ? Rat(0) : gu / gv;

  // In the frame: G(X, Y) = b Y + Q(X, Y) with Q purely quadratic.
  const AffinePolynomial G = to_frame(g, jet.swapped, jet.slope);
  const Rat b = G.coefficient(0, 1);
  const AffinePolynomial Q = G - b * AffinePolynomial::v();
  AffinePolynomial phi;  // Y as a series in X, stored in the u slot
  for (int iter = 0; iter < 4; ++iter)
    phi = (Rat(-1) / b * Q.compose(AffinePolynomial::u(), phi)).truncate(5);
  jet.c2 = phi.coefficient(2, 0);
  jet.c3 = phi.coefficient(3, 0);
  jet.c4 = phi.coefficient(4, 0);
  return jet;
}

AffinePolynomial local_equation_in_frame(const ConicForm& q, const BranchJet& jet) {
  return to_frame(dehomogenize(q.polynomial(), jet.center), jet.swapped, jet.slope);
}

unsigned local_intersection_multiplicity(const ConicForm& a, const ConicForm& b,
                                         const ProjectivePoint& p) {
  const BranchJet ja = branch_jet(a, p);
  const BranchJet jb = branch_jet(b, p);
  if (!proportional(ja.tangent, jb.tangent)) return 1;
  if (ja.c2 != jb.c2) return 2;
  if (ja.c3 != jb.c3) return 3;
  if (ja.c4 != jb.c4) return 4;
  throw std::logic_error("distinct conics with contact order above 4 at " + to_string(p));
}

// ---------------------------------------------------------------------------
// Univariate helpers over Q (coefficient i multiplies t^i)

namespace {

using UPoly = std::vector<Rat>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

// Returns remainder; quotient through `quotient` when non-null.
UPoly divmod(UPoly a, const UPoly& b, UPoly* quotient = nullptr) {
  trim(a);
  UPoly q(std::max(0, deg(a) - deg(b) + 1), Rat(0));
  while (deg(a) >= deg(b) && !a.empty()) {
    const int shift = deg(a) - deg(b);
    const Rat factor = a.back() / b.back();
    q[shift] = factor;
    for (int i = 0; i <= deg(b); ++i) a[i + shift] -= factor * b[i];
    trim(a);
  }
  if (quotient) *quotient = q;
  return a;
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rat lead = a.back();
    for (Rat& c : a) c /= lead;
  }
  return a;
}

std::vector<BigInt> divisors(BigInt n) {
  n = abs(n);
  std::vector<std::pair<BigInt, unsigned>> factors;
  for (BigInt p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

Rat evaluate(const UPoly& p, const Rat& t) {
  Rat acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
  return acc;
}

// Rational roots with multiplicities.
std::vector<std::pair<Rat, unsigned>> rational_roots(UPoly p) {
  trim(p);
  std::vector<std::pair<Rat, unsigned>> roots;
  if (p.size() <= 1) return roots;
  unsigned zero_mult = 0;
  while (p.front() == 0) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult) roots.emplace_back(Rat(0), zero_mult);

  // Integer coefficients.
  BigInt l = 1;
  for (const Rat& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> ip;
  for (const Rat& c : p) ip.push_back(BigInt(c * l));

  for (const BigInt& num : divisors(ip.front()))
    for (const BigInt& den : divisors(ip.back()))
      for (int sign : {1, -1}) {
        Rat t(sign * num, den);
        t.canonicalize();
        if (std::any_of(roots.begin(), roots.end(), [&](const auto& r) { return r.first == t; }))
          continue;
        unsigned mult = 0;
        while (p.size() > 1 && evaluate(p, t) == 0) {
          UPoly q;
          divmod(p, UPoly{-t, Rat(1)}, &q);
          p = std::move(q);
          ++mult;
        }
        if (mult) roots.emplace_back(t, mult);
      }
  return roots;
}

using Matrix3 = std::array<std::array<Rat, 3>, 3>;

// f(A w) as a form in w.
HomogeneousPolynomial substitute_linear(const HomogeneousPolynomial& f, const Matrix3& A) {
  std::array<HomogeneousPolynomial, 3> image;
  for (std::size_t i = 0; i < 3; ++i) {
    image[i] = HomogeneousPolynomial(1);
    for (std::size_t j = 0; j < 3; ++j)
      image[i] = image[i] + A[i][j] * HomogeneousPolynomial::variable(static_cast<Var>(j));
  }
  HomogeneousPolynomial out(f.degree());
  for (const auto& [e, c] : f.terms())
    out = out + c * (image[0].pow(e[0]) * image[1].pow(e[1]) * image[2].pow(e[2]));
  return out;
}

ProjectivePoint apply(const Matrix3& A, const ProjectivePoint& w) {
  ProjectivePoint v;
  for (std::size_t i = 0; i < 3; ++i) v[i] = A[i][0] * w[0] + A[i][1] * w[1] + A[i][2] * w[2];
  return v;
}

Rat det3(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Candidate projection centers: small integer points in a fixed order.
std::vector<ProjectivePoint> projection_centers() {
  std::vector<ProjectivePoint> out{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  for (int s = 1; s <= 6; ++s)
    for (int a = -s; a <= s; ++a)
      for (int b = -s; b <= s; ++b)
        for (int c = 1; c <= s; ++c)
          if (std::max({std::abs(a), std::abs(b), c}) == s) out.push_back({a, b, c});
  return out;
}

// Splits q(w) = a2 w2^2 + a1 w2 + a0 with a1, a0 forms in (w0, w1).
std::array<HomogeneousPolynomial, 3> split_by_w2(const HomogeneousPolynomial& q) {
  std::array<HomogeneousPolynomial, 3> parts{HomogeneousPolynomial(2), HomogeneousPolynomial(1),
                                             HomogeneousPolynomial(0)};
  std::array<HomogeneousPolynomial::Terms, 3> terms;
  for (const auto& [e, c] : q.terms()) terms[e[2]].emplace(Exponent{e[0], e[1], 0}, c);
  for (unsigned k = 0; k < 3; ++k) parts[k] = HomogeneousPolynomial(2 - k, terms[k]);
  return parts;  // index = power of w2
}

// Univariate restriction of q(w) to w0 = a, w1 = b, as a polynomial in w2.
UPoly restrict_to_line(const HomogeneousPolynomial& q, const Rat& a, const Rat& b) {
  UPoly out(3, Rat(0));
  for (const auto& [e, c] : q.terms()) {
    Rat v = c;
    for (unsigned i = 0; i < e[0]; ++i) v *= a;
    for (unsigned i = 0; i < e[1]; ++i) v *= b;
    out[e[2]] += v;
  }
  trim(out);
  return out;
}

enum class LineOutcome { Single, Irrational, Ambiguous };

}  // namespace

namespace {

struct CenterResult {
  PairIntersection inter;
  /// Monic factor of the resultant (in t = w0 / w1) carrying the unlocated
  /// intersections; constant 1 when everything was located.
  UPoly residual_factor;
  /// No rational direction carries an irrational pair of points.
  bool clean = true;
};

// Intersections seen from one projection center. nullopt when the center lies
// on a conic or one line through it holds two distinct rational common points.
std::optional<CenterResult> intersect_from_center(const ConicForm& ca, const ConicForm& cb,
                                                  const ProjectivePoint& center) {
  if (ca.evaluate(center) == 0 || cb.evaluate(center) == 0) return std::nullopt;
  // Columns: two unit vectors completing the center to a basis, then the center.
  Matrix3 A{};
  for (std::size_t skip = 0; skip < 3; ++skip) {
    std::size_t col = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k == skip) continue;
      for (std::size_t i = 0; i < 3; ++i) A[i][col] = i == k ? 1 : 0;
      ++col;
    }
    for (std::size_t i = 0; i < 3; ++i) A[i][2] = center[i];
    if (det3(A) != 0) break;
  }

  const HomogeneousPolynomial qa = substitute_linear(ca.polynomial(), A);
  const HomogeneousPolynomial qb = substitute_linear(cb.polynomial(), A);
  const auto pa = split_by_w2(qa), pb = split_by_w2(qb);
  const Rat a2 = pa[2].coefficient({0, 0, 0}), b2 = pb[2].coefficient({0, 0, 0});
  const HomogeneousPolynomial &a1 = pa[1], &a0 = pa[0], &b1 = pb[1], &b0 = pb[0];
  // Sylvester resultant of two quadratics in w2.
  const HomogeneousPolynomial u = a2 * b0 - b2 * a0;
  const HomogeneousPolynomial resultant = u * u - (a2 * b1 - b2 * a1) * (a1 * b0 - a0 * b1);
  if (resultant.is_zero()) throw std::logic_error("vanishing resultant for distinct smooth conics");

  // Roots (w0 : w1) of the binary quartic.
  std::vector<std::pair<std::array<Rat, 2>, unsigned>> directions;
  UPoly in_t(5, Rat(0));  // t = w0 / w1
  for (const auto& [e, c] : resultant.terms()) in_t[e[0]] = c;
  trim(in_t);
  const unsigned at_infinity = 4 - static_cast<unsigned>(deg(in_t));
  if (at_infinity) directions.push_back({{Rat(1), Rat(0)}, at_infinity});
  UPoly remaining = in_t;
  for (const auto& [t, m] : rational_roots(in_t)) {
    directions.push_back({{t, Rat(1)}, m});
    for (unsigned i = 0; i < m; ++i) {
      UPoly q;
      divmod(remaining, UPoly{-t, Rat(1)}, &q);
      remaining = std::move(q);
    }
  }

  CenterResult out;
  unsigned located = 0;
  for (const auto& [dir, mult] : directions) {
    const UPoly g = gcd(restrict_to_line(qa, dir[0], dir[1]), restrict_to_line(qb, dir[0], dir[1]));
    Rat root;
    if (deg(g) == 1) {
      root = -g[0];
    } else if (deg(g) == 2) {
      const auto roots = rational_roots(g);
      if (roots.empty()) {
        out.clean = false;  // conjugate pair on a rational line
        continue;
      }
      if (roots.size() != 1 || roots.front().second != 2) return std::nullopt;
      root = roots.front().first;
    } else {
      throw std::logic_error("resultant root without a common point on its line");
    }
    out.inter.points.emplace_back(normalize_point(apply(A, {dir[0], dir[1], root})), mult);
    located += mult;
  }
  out.inter.residual = 4 - located;

  for (const auto& [p, mult] : out.inter.points) {
    const unsigned by_jets = local_intersection_multiplicity(ca, cb, p);
    if (by_jets != mult)
      throw std::logic_error("resultant multiplicity " + std::to_string(mult) +
                             " disagrees with jet contact order " + std::to_string(by_jets) + " at " +
                             to_string(p));
  }
  std::sort(out.inter.points.begin(), out.inter.points.end());
  const Rat lead = remaining.back();
  for (Rat& c : remaining) c /= lead;
  out.residual_factor = std::move(remaining);
  return out;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  return d;
}

bool squarefree(const UPoly& p) { return deg(p) <= 0 || deg(gcd(p, derivative(p))) == 0; }

bool coprime(const UPoly& a, const UPoly& b) {
  if (deg(a) <= 0 || deg(b) <= 0) return true;
  return deg(gcd(a, b)) == 0;
}

}  // namespace

PairIntersection rational_pair_intersections(const ConicForm& ca, const ConicForm& cb) {
  if (!ca.is_smooth() || !cb.is_smooth()) throw ValidationError("intersection requires smooth conics");
  if (ca.proportional_to(cb)) throw ValidationError("intersection of proportional conics");
  for (const ProjectivePoint& center : projection_centers())
    if (auto r = intersect_from_center(ca, cb, center)) return r->inter;
  throw std::logic_error("no admissible projection center found");
}

// ---------------------------------------------------------------------------
// Classification

std::string SingularityType::to_string() const {
  switch (kind) {
    case Kind::A1: return "A1";
    case Kind::A3: return "A3";
    case Kind::A5: return "A5";
    case Kind::A7: return "A7";
    case Kind::D4: return "D4";
    case Kind::OrdinaryMultiple: return "OrdinaryMultiple(" + std::to_string(branches) + ")";
    case Kind::Descriptor: return "Descriptor(" + std::to_string(branches) + ")";
  }
  return "?";
}

bool SingularityType::is_ade() const {
  switch (kind) {
    case Kind::A1:
    case Kind::A3:
    case Kind::A5:
    case Kind::A7:
    case Kind::D4: return true;
    default: return false;
  }
}

SingularPointRecord classify_point(const ConicArrangement& arr, const ProjectivePoint& p,
                                   const ClassifyOptions& options) {
  SingularPointRecord rec;
  rec.point = normalize_point(p);
  const auto& comps = arr.components();
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (comps[i].evaluate(rec.point) == 0) rec.members.push_back(i);
  const std::size_t r = rec.members.size();
  if (r < 2)
    throw ValidationError("NotSingular: fewer than two components pass through " + to_string(rec.point));

  rec.pair_mults.assign(r, std::vector<unsigned>(r, 0));
  unsigned total = 0;
  bool all_transverse = true;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) {
      const unsigned m = local_intersection_multiplicity(comps[rec.members[a]], comps[rec.members[b]], rec.point);
      rec.pair_mults[a][b] = rec.pair_mults[b][a] = m;
      total += m;
      all_transverse = all_transverse && m == 1;
    }
  rec.mu = 2 * total - r + 1;

  using Kind = SingularityType::Kind;
  rec.type.branches = static_cast<unsigned>(r);
  if (r == 2) {
    static constexpr Kind by_mult[] = {Kind::Descriptor, Kind::A1, Kind::A3, Kind::A5, Kind::A7};
    rec.type.kind = by_mult[rec.pair_mults[0][1]];
  } else if (all_transverse) {
    rec.type.kind = r == 3 ? Kind::D4 : Kind::OrdinaryMultiple;
  } else {
    rec.type.kind = Kind::Descriptor;
  }

  if (rec.type.is_ade())
    rec.tau = rec.mu;
  else if (rec.type.kind == Kind::OrdinaryMultiple && (r == 4 || options.assume_qh))
    rec.tau = rec.mu;  // (r-1)^2 for a quasi-homogeneous ordinary point

  if (options.local_algebra) {
    const LocalInvariants inv = local_invariants(arr.product(), rec.point);
    rec.mu_algebra = inv.milnor;
    rec.tau_algebra = inv.tjurina;
  }
  return rec;
}

std::optional<std::size_t> LocusSurvey::tau_sum() const {
  if (!complete && !unlocated_nodes) return std::nullopt;
  std::size_t sum = unlocated_nodes.value_or(0);
  for (const auto& r : records) {
    const auto t = r.best_tau();
    if (!t) return std::nullopt;
    sum += *t;
  }
  return sum;
}

std::size_t LocusSurvey::located_count(SingularityType::Kind kind) const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [kind](const auto& r) { return r.type.kind == kind; }));
}

std::optional<std::size_t> LocusSurvey::count(SingularityType::Kind kind) const {
  if (!inventory_complete()) return std::nullopt;
  std::size_t n = located_count(kind);
  if (kind == SingularityType::Kind::A1) n += unlocated_nodes.value_or(0);
  return n;
}

LocusSurvey survey(const ConicArrangement& arr, const std::vector<ProjectivePoint>& extra_points,
                   const ClassifyOptions& options) {
  constexpr std::size_t kCleanCenterAttempts = 64;
  LocusSurvey out;
  const auto& comps = arr.components();
  const std::size_t k = comps.size();

  // One projection center for every pair, so that an irrational point shared
  // by two pairs shows up as a common root of their residual factors.
  std::optional<std::vector<CenterResult>> chosen;
  std::size_t attempts = 0;
  for (const ProjectivePoint& center : projection_centers()) {
    std::vector<CenterResult> results;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        auto r = intersect_from_center(comps[i], comps[j], center);
        if (!r) break;
        results.push_back(std::move(*r));
      }
    if (results.size() != k * (k - 1) / 2) continue;
    const bool clean = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.clean; });
    if (!chosen || clean) chosen = std::move(results);
    if (clean || ++attempts >= kCleanCenterAttempts) break;
  }
  if (!chosen) throw std::logic_error("no projection center admissible for all pairs");

  std::vector<ProjectivePoint> points;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j, ++idx) {
      const PairIntersection& inter = (*chosen)[idx].inter;
      out.residual_per_pair[{i, j}] = inter.residual;
      for (const auto& [p, m] : inter.points) points.push_back(p);
    }

  for (const ProjectivePoint& extra : extra_points) {
    const ProjectivePoint p = normalize_point(extra);
    std::size_t through = 0;
    for (const auto& c : comps) through += c.evaluate(p) == 0;
    if (through < 2) {
      out.notes.push_back("extra point " + to_string(p) + " lies on fewer than two components; ignored");
      continue;
    }
    if (std::find(points.begin(), points.end(), p) == points.end())
      out.notes.push_back("extra point " + to_string(p) + " was not found by pair elimination");
    points.push_back(p);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (const ProjectivePoint& p : points) out.records.push_back(classify_point(arr, p, options));

  out.complete = std::all_of(out.residual_per_pair.begin(), out.residual_per_pair.end(),
                             [](const auto& kv) { return kv.second == 0; });

  // Unlocated intersections are simple roots, pairwise unshared: each is a
  // transverse point of exactly two components.
  const auto& res = *chosen;
  bool nodes_provable = std::all_of(res.begin(), res.end(), [](const auto& r) {
    return r.clean && squarefree(r.residual_factor);
  });
  for (std::size_t a = 0; a < res.size() && nodes_provable; ++a)
    for (std::size_t b = a + 1; b < res.size() && nodes_provable; ++b)
      nodes_provable = coprime(res[a].residual_factor, res[b].residual_factor);
  if (nodes_provable) {
    std::size_t nodes = 0;
    for (const auto& [pair, r] : out.residual_per_pair) nodes += r;
    out.unlocated_nodes = nodes;
  } else if (!out.complete) {
    out.notes.push_back("unlocated intersections could not be certified as ordinary nodes");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local algebra

std::size_t local_algebra_length(const std::vector<AffinePolynomial>& generators, unsigned max_order) {
  std::vector<AffinePolynomial> gens;
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    if (g.constant_term() != 0) return 0;  // unit: the local ring collapses
    gens.push_back(g);
  }

  // Monomials u^i v^j with i + j < N are indexed degree by degree.
  auto index = [](unsigned i, unsigned j) {
    const unsigned d = i + j;
    return static_cast<std::size_t>(d) * (d + 1) / 2 + j;
  };

  std::optional<std::size_t> previous;
  for (unsigned N = 1; N <= max_order; ++N) {
    const std::size_t cols = static_cast<std::size_t>(N) * (N + 1) / 2;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> rows;
    for (const auto& g : gens) {
      const unsigned ord = *g.order();
      if (ord >= N) continue;
      for (unsigned d = 0; d + ord < N; ++d)
        for (unsigned j = 0; j <= d; ++j) {
          const unsigned i = d - j;
          std::vector<std::pair<std::size_t, Rat>> row;
          for (const auto& [e, c] : g.terms()) {
            if (e.first + e.second + d >= N) continue;
            row.emplace_back(index(e.first + i, e.second + j), c);
          }
          if (!row.empty()) rows.push_back(std::move(row));
        }
    }
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, v] : rows[r]) m.set(r, c, v);
    const std::size_t length = cols - rank(m);
    if (previous && *previous == length) return length;
    previous = length;
  }
  throw Error("local algebra did not stabilize: the point is not an isolated singularity");
}

LocalInvariants local_invariants(const HomogeneousPolynomial& f, const ProjectivePoint& p) {
  const AffinePolynomial g = dehomogenize(f, p);
  if (g.constant_term() != 0) return {};
  const AffinePolynomial gu = g.derivative_u(), gv = g.derivative_v();
  return {local_algebra_length({gu, gv}), local_algebra_length({g, gu, gv})};
}

}  // namespace freecurve
