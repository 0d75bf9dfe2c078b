#include <freecurve/polynomial.hpp>

#include <freecurve/errors.hpp>

#include <sstream>
#include <stdexcept>

namespace freecurve {

std::vector<Exponent> monomials_of_degree(unsigned degree) {
  std::vector<Exponent> out;
  out.reserve(monomial_count(degree));
  for (unsigned i = degree + 1; i-- > 0;)
    for (unsigned j = degree - i + 1; j-- > 0;) out.push_back({i, j, degree - i - j});
  return out;
}

std::size_t monomial_index(const Exponent& e) {
  // Monomials with x-degree > i come first; for fixed i, y-degree descends.
  const unsigned d = total_degree(e);
  const unsigned i = e[0], j = e[1];
  std::size_t before = 0;
  for (unsigned a = d; a > i; --a) before += d - a + 1;
  return before + (d - i - j);
}

ProjectivePoint normalize_point(const ProjectivePoint& p) {
  for (std::size_t k = 3; k-- > 0;) {
    if (p[k] != 0) {
      ProjectivePoint q;
      for (std::size_t i = 0; i < 3; ++i) q[i] = p[i] / p[k];
      return q;
    }
  }
  throw std::invalid_argument("projective point with all coordinates zero");
}

std::string to_string(const ProjectivePoint& p) {
  const ProjectivePoint q = normalize_point(p);
  return "(" + to_string(q[0]) + ":" + to_string(q[1]) + ":" + to_string(q[2]) + ")";
}

// ---------------------------------------------------------------------------
// HomogeneousPolynomial

HomogeneousPolynomial::HomogeneousPolynomial(unsigned degree, const Terms& terms)
    : degree_(degree) {
  for (const auto& [e, c] : terms) {
    if (total_degree(e) != degree)
      throw std::invalid_argument("term degree does not match declared degree");
    if (c != 0) terms_.emplace(e, c);
  }
}

HomogeneousPolynomial HomogeneousPolynomial::monomial(const Exponent& e, const Rat& coeff) {
  HomogeneousPolynomial p(total_degree(e));
  if (coeff != 0) p.terms_.emplace(e, coeff);
  return p;
}

Rat HomogeneousPolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

namespace {

Rat power(const Rat& base, unsigned n) {
  Rat out = 1;
  for (unsigned i = 0; i < n; ++i) out *= base;
  return out;
}

void accumulate(HomogeneousPolynomial::Terms& terms, const Exponent& e, const Rat& c) {
  auto [it, inserted] = terms.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace

Rat HomogeneousPolynomial::evaluate(const ProjectivePoint& p) const {
  Rat sum = 0;
  for (const auto& [e, c] : terms_) sum += c * power(p[0], e[0]) * power(p[1], e[1]) * power(p[2], e[2]);
  return sum;
}

HomogeneousPolynomial HomogeneousPolynomial::derivative(Var v) const {
  if (degree_ == 0) return HomogeneousPolynomial(0);
  const auto k = static_cast<std::size_t>(v);
  HomogeneousPolynomial out(degree_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[k] == 0) continue;
    Exponent f = e;
    --f[k];
    out.terms_.emplace(f, c * e[k]);
  }
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::pow(unsigned n) const {
  HomogeneousPolynomial out = monomial({0, 0, 0});
  for (unsigned i = 0; i < n; ++i) out = out * *this;
  return out;
}

std::string HomogeneousPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  static constexpr const char* names[3] = {"x", "y", "z"};
  for (const auto& [e, c] : terms_) {
    Rat mag = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    bool wrote = false;
    if (mag != 1 || total_degree(e) == 0) {
      os << freecurve::to_string(mag);
      wrote = true;
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (e[k] == 0) continue;
      if (wrote) os << "*";
      os << names[k];
      if (e[k] > 1) os << "^" << e[k];
      wrote = true;
    }
  }
  return os.str();
}

HomogeneousPolynomial HomogeneousPolynomial::operator-() const {
  HomogeneousPolynomial out(degree_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

namespace {

unsigned common_degree(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  if (a.degree() == b.degree()) return a.degree();
  if (a.is_zero()) return b.degree();
  if (b.is_zero()) return a.degree();
  throw std::invalid_argument("adding homogeneous polynomials of different degrees");
}

}  // namespace

HomogeneousPolynomial operator+(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  HomogeneousPolynomial out(common_degree(a, b));
  out.terms_ = a.terms_;
  for (const auto& [e, c] : b.terms_) accumulate(out.terms_, e, c);
  return out;
}

HomogeneousPolynomial operator-(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  return a + (-b);
}

HomogeneousPolynomial operator*(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  HomogeneousPolynomial out(a.degree_ + b.degree_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      accumulate(out.terms_, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return out;
}

HomogeneousPolynomial operator*(const Rat& c, const HomogeneousPolynomial& a) {
  HomogeneousPolynomial out(a.degree_);
  if (c == 0) return out;
  for (const auto& [e, v] : a.terms_) out.terms_.emplace(e, c * v);
  return out;
}

// ---------------------------------------------------------------------------
// AffinePolynomial

AffinePolynomial::AffinePolynomial(const Terms& terms) {
  for (const auto& [e, c] : terms)
    if (c != 0) terms_.emplace(e, c);
}

AffinePolynomial AffinePolynomial::constant(const Rat& c) {
  AffinePolynomial p;
  if (c != 0) p.terms_.emplace(Exponent2{0, 0}, c);
  return p;
}

AffinePolynomial AffinePolynomial::u() {
  AffinePolynomial p;
  p.terms_.emplace(Exponent2{1, 0}, 1);
  return p;
}

AffinePolynomial AffinePolynomial::v() {
  AffinePolynomial p;
  p.terms_.emplace(Exponent2{0, 1}, 1);
  return p;
}

Rat AffinePolynomial::coefficient(unsigned i, unsigned j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rat(0) : it->second;
}

std::optional<unsigned> AffinePolynomial::order() const {
  if (terms_.empty()) return std::nullopt;
  const auto& e = terms_.begin()->first;
  return e.first + e.second;
}

unsigned AffinePolynomial::degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.rbegin()->first;
  return e.first + e.second;
}

namespace {

void accumulate2(AffinePolynomial::Terms& terms, const AffinePolynomial::Exponent2& e,
                 const Rat& c) {
  auto [it, inserted] = terms.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace

AffinePolynomial AffinePolynomial::derivative_u() const {
  AffinePolynomial out;
  for (const auto& [e, c] : terms_)
    if (e.first > 0) out.terms_.emplace(Exponent2{e.first - 1, e.second}, c * e.first);
  return out;
}

AffinePolynomial AffinePolynomial::derivative_v() const {
  AffinePolynomial out;
  for (const auto& [e, c] : terms_)
    if (e.second > 0) out.terms_.emplace(Exponent2{e.first, e.second - 1}, c * e.second);
  return out;
}

AffinePolynomial AffinePolynomial::pow(unsigned n) const {
  AffinePolynomial out = constant(1);
  for (unsigned i = 0; i < n; ++i) out = out * *this;
  return out;
}

AffinePolynomial AffinePolynomial::compose(const AffinePolynomial& U,
                                           const AffinePolynomial& V) const {
  AffinePolynomial out;
  std::vector<AffinePolynomial> upow{constant(1)}, vpow{constant(1)};
  for (const auto& [e, c] : terms_) {
    while (upow.size() <= e.first) upow.push_back(upow.back() * U);
    while (vpow.size() <= e.second) vpow.push_back(vpow.back() * V);
    out = out + c * (upow[e.first] * vpow[e.second]);
  }
  return out;
}

AffinePolynomial AffinePolynomial::truncate(unsigned n) const {
  AffinePolynomial out;
  for (const auto& [e, c] : terms_)
    if (e.first + e.second < n) out.terms_.emplace(e, c);
  return out;
}

Rat AffinePolynomial::evaluate(const Rat& u, const Rat& v) const {
  Rat sum = 0;
  for (const auto& [e, c] : terms_) sum += c * power(u, e.first) * power(v, e.second);
  return sum;
}

std::string AffinePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat mag = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    bool wrote = false;
    if (mag != 1 || (e.first == 0 && e.second == 0)) {
      os << freecurve::to_string(mag);
      wrote = true;
    }
    if (e.first > 0) {
      os << (wrote ? "*" : "") << "u";
      if (e.first > 1) os << "^" << e.first;
      wrote = true;
    }
    if (e.second > 0) {
      os << (wrote ? "*" : "") << "v";
      if (e.second > 1) os << "^" << e.second;
    }
  }
  return os.str();
}

AffinePolynomial operator+(const AffinePolynomial& a, const AffinePolynomial& b) {
  AffinePolynomial out = a;
  for (const auto& [e, c] : b.terms_) accumulate2(out.terms_, e, c);
  return out;
}

AffinePolynomial operator-(const AffinePolynomial& a, const AffinePolynomial& b) {
  return a + Rat(-1) * b;
}

AffinePolynomial operator*(const AffinePolynomial& a, const AffinePolynomial& b) {
  AffinePolynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      accumulate2(out.terms_, {ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return out;
}

AffinePolynomial operator*(const Rat& c, const AffinePolynomial& a) {
  AffinePolynomial out;
  if (c == 0) return out;
  for (const auto& [e, v] : a.terms_) out.terms_.emplace(e, c * v);
  return out;
}

// ---------------------------------------------------------------------------
// Dehomogenization

AffineChart chart_for(const ProjectivePoint& p) {
  if (p[2] != 0) return {2, {0, 1}};
  if (p[1] != 0) return {1, {0, 2}};
  if (p[0] != 0) return {0, {1, 2}};
  throw std::invalid_argument("projective point with all coordinates zero");
}

AffinePolynomial dehomogenize(const HomogeneousPolynomial& f, const ProjectivePoint& p) {
  const AffineChart chart = chart_for(p);
  const Rat scale = p[chart.chart];
  // Each homogeneous coordinate as an affine polynomial in (u, v).
  std::array<AffinePolynomial, 3> coord;
  coord[chart.chart] = AffinePolynomial::constant(1);
  coord[chart.local[0]] = AffinePolynomial::constant(p[chart.local[0]] / scale) + AffinePolynomial::u();
  coord[chart.local[1]] = AffinePolynomial::constant(p[chart.local[1]] / scale) + AffinePolynomial::v();

  std::array<std::vector<AffinePolynomial>, 3> powers;
  for (std::size_t k = 0; k < 3; ++k) powers[k].push_back(AffinePolynomial::constant(1));
  AffinePolynomial out;
  for (const auto& [e, c] : f.terms()) {
    AffinePolynomial term = AffinePolynomial::constant(c);
    for (std::size_t k = 0; k < 3; ++k) {
      while (powers[k].size() <= e[k]) powers[k].push_back(powers[k].back() * coord[k]);
      term = term * powers[k][e[k]];
    }
    out = out + term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ConicForm

ConicForm::ConicForm(const HomogeneousPolynomial& q) : poly_(q) {
  if (q.degree() != 2) throw ValidationError("conic component must have degree 2, got " + std::to_string(q.degree()));
  if (q.is_zero()) throw ValidationError("conic component is identically zero");
  for (std::size_t i = 0; i < 3; ++i) {
    Exponent sq{0, 0, 0};
    sq[i] = 2;
    matrix_[i][i] = q.coefficient(sq);
    for (std::size_t j = i + 1; j < 3; ++j) {
      Exponent mixed{0, 0, 0};
      mixed[i] = mixed[j] = 1;
      matrix_[i][j] = matrix_[j][i] = q.coefficient(mixed) / 2;
    }
  }
}

Rat ConicForm::determinant() const {
  const auto& m = matrix_;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<Rat, 3> ConicForm::gradient(const ProjectivePoint& p) const {
  std::array<Rat, 3> g;
  for (std::size_t i = 0; i < 3; ++i) {
    g[i] = 0;
    for (std::size_t j = 0; j < 3; ++j) g[i] += 2 * matrix_[i][j] * p[j];
  }
  return g;
}

bool ConicForm::proportional_to(const ConicForm& other) const {
  // Find a nonzero entry to fix the ratio.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (matrix_[i][j] != 0) {
        if (other.matrix_[i][j] == 0) return false;
        const Rat ratio = other.matrix_[i][j] / matrix_[i][j];
        for (std::size_t a = 0; a < 3; ++a)
          for (std::size_t b = 0; b < 3; ++b)
            if (other.matrix_[a][b] != ratio * matrix_[a][b]) return false;
        return true;
      }
  return false;
}

}  // namespace freecurve
