#include <freecurve/rational.hpp>

#include <stdexcept>

namespace freecurve {

std::string to_string(const Rat& value) { return value.get_str(); }

std::string to_string(const BigInt& value) { return value.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

BigInt floor(const Rat& value) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

BigInt ceil(const Rat& value) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

}  // namespace freecurve
