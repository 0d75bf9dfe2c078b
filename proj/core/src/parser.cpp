#include <freecurve/parser.hpp>

#include <freecurve/errors.hpp>

#include <cctype>
#include <map>
#include <optional>
#include <string>

namespace freecurve {
namespace {

// Intermediate values may be inhomogeneous until the whole expression is read.
using GeneralPoly = std::map<Exponent, Rat, MonomialOrder>;

void add_into(GeneralPoly& acc, const GeneralPoly& p, int sign) {
  for (const auto& [e, c] : p) {
    auto [it, inserted] = acc.emplace(e, sign * c);
    if (!inserted) {
      it->second += sign * c;
      if (it->second == 0) acc.erase(it);
    }
  }
}

GeneralPoly multiply(const GeneralPoly& a, const GeneralPoly& b) {
  GeneralPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      const Exponent e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      auto [it, inserted] = out.emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) out.erase(it);
      }
    }
  return out;
}

GeneralPoly constant(const Rat& c) {
  GeneralPoly p;
  if (c != 0) p.emplace(Exponent{0, 0, 0}, c);
  return p;
}

std::optional<unsigned> homogeneous_degree(const GeneralPoly& p) {
  if (p.empty()) return 0u;
  const unsigned d = total_degree(p.begin()->first);
  for (const auto& [e, c] : p)
    if (total_degree(e) != d) return std::nullopt;
  return d;
}

struct Factor {
  GeneralPoly poly;
  std::size_t position;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParsedExpression run() {
    skip_space();
    if (pos_ >= text_.size()) fail(pos_, "empty expression");

    std::vector<std::pair<GeneralPoly, std::size_t>> terms;
    std::vector<Factor> top_factors;
    bool single_product = true;

    int sign = 1;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1 : 1;
    for (;;) {
      skip_space();
      const std::size_t start = pos_;
      std::vector<Factor> factors;
      GeneralPoly t = parse_term(&factors);
      if (sign < 0) t = multiply(t, constant(-1));
      terms.emplace_back(std::move(t), start);
      if (terms.size() == 1) top_factors = std::move(factors);
      skip_space();
      if (pos_ >= text_.size()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(pos_, std::string("unexpected character '") + c + "'");
      sign = take() == '-' ? -1 : 1;
      single_product = false;
    }

    GeneralPoly sum;
    for (const auto& [t, at] : terms) add_into(sum, t, 1);
    const auto degree = homogeneous_degree(sum);
    if (!degree) {
      // Blame the first top-level term that disagrees with the earliest one.
      std::size_t blame = 0;
      std::optional<unsigned> lead;
      for (const auto& [t, at] : terms) {
        const auto td = homogeneous_degree(t);
        if (td && !t.empty() && !lead) {
          lead = td;
          continue;
        }
        if (!td || (!t.empty() && *td != *lead)) {
          blame = at;
          break;
        }
      }
      throw ParseError(ParseError::Kind::NonHomogeneous, blame,
                       "expression is not homogeneous (terms of mixed degree)");
    }

    ParsedExpression out{HomogeneousPolynomial(*degree, sum), {}};
    if (single_product) {
      for (const Factor& f : top_factors) {
        const auto fd = homogeneous_degree(f.poly);
        if (!fd) throw ParseError(ParseError::Kind::NonHomogeneous, f.position,
                                  "factor is not homogeneous");
        if (*fd > 0) out.factors.emplace_back(*fd, f.poly);
      }
    }
    if (out.factors.empty() && !out.poly.is_zero()) out.factors.push_back(out.poly);
    return out;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& what) const {
    throw ParseError(ParseError::Kind::Syntax, at,
                     "syntax error at position " + std::to_string(at) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char take() {
    skip_space();
    return text_[pos_++];
  }

  // `factors`, when non-null, receives each multiplicative factor with its
  // power expanded as repetition.
  GeneralPoly parse_term(std::vector<Factor>* factors) {
    GeneralPoly acc = parse_unary(factors);
    while (peek() == '*') {
      take();
      acc = multiply(acc, parse_unary(factors));
    }
    return acc;
  }

  GeneralPoly parse_unary(std::vector<Factor>* factors) {
    const char c = peek();
    if (c == '-' || c == '+') {
      take();
      GeneralPoly inner = parse_unary(factors);
      return c == '-' ? multiply(inner, constant(-1)) : inner;
    }
    return parse_power(factors);
  }

  GeneralPoly parse_power(std::vector<Factor>* factors) {
    skip_space();
    const std::size_t start = pos_;
    GeneralPoly base = parse_atom();
    unsigned exponent = 1;
    if (peek() == '^') {
      take();
      skip_space();
      const std::size_t at = pos_;
      const std::string digits = read_digits();
      if (digits.empty()) fail(at, "expected a non-negative integer exponent");
      if (digits.size() > 4) fail(at, "exponent too large");
      exponent = static_cast<unsigned>(std::stoul(digits));
    }
    GeneralPoly out = constant(1);
    for (unsigned i = 0; i < exponent; ++i) {
      out = multiply(out, base);
      if (factors) factors->push_back({base, start});
    }
    return out;
  }

  std::string read_digits() {
    std::string out;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      out += text_[pos_++];
    return out;
  }

  GeneralPoly parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail(pos_, "unexpected end of expression");
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string literal = read_digits();
      if (peek() == '/') {
        take();
        skip_space();
        const std::size_t at = pos_;
        const std::string den = read_digits();
        if (den.empty()) fail(at, "expected integer denominator after '/'");
        if (den.find_first_not_of('0') == std::string::npos) fail(at, "zero denominator");
        literal += "/" + den;
      }
      return constant(parse_rat(literal));
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        fail(start, "unknown identifier");
      Exponent e{0, 0, 0};
      e[static_cast<std::size_t>(c - 'x')] = 1;
      GeneralPoly p;
      p.emplace(e, 1);
      return p;
    }
    if (c == '(') {
      ++pos_;
      GeneralPoly inner = parse_sum();
      if (peek() != ')') fail(pos_, "expected ')'");
      take();
      return inner;
    }
    if (c == 'i' || c == 'I' || std::isalpha(static_cast<unsigned char>(c)))
      fail(start, "unknown identifier; only variables x, y, z and rational coefficients are supported");
    fail(start, std::string("unexpected character '") + c + "'");
  }

  GeneralPoly parse_sum() {
    GeneralPoly acc;
    int sign = 1;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1 : 1;
    for (;;) {
      add_into(acc, parse_term(nullptr), sign);
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      sign = take() == '-' ? -1 : 1;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedExpression parse_expression(std::string_view text) { return Parser(text).run(); }

}  // namespace freecurve
