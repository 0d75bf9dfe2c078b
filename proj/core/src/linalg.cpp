#include <freecurve/linalg.hpp>

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace freecurve {

// ---------------------------------------------------------------------------
// RatMatrix

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, 1);
  return m;
}

RatMatrix RatMatrix::from_dense(const std::vector<RatVector>& dense) {
  const std::size_t cols = dense.empty() ? 0 : dense.front().size();
  RatMatrix m(dense.size(), cols);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c)
      if (dense[r][c] != 0) m.rows_[r].emplace_back(c, dense[r][c]);
  }
  return m;
}

void RatMatrix::set(std::size_t r, std::size_t c, const Rat& value) {
  if (r >= rows_.size() || c >= cols_) throw std::out_of_range("matrix index out of range");
  Row& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (value == 0)
      row.erase(it);
    else
      it->second = value;
  } else if (value != 0) {
    row.insert(it, Entry(c, value));
  }
}

void RatMatrix::add(std::size_t r, std::size_t c, const Rat& value) {
  if (value == 0) return;
  set(r, c, at(r, c) + value);
}

Rat RatMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_.size() || c >= cols_) throw std::out_of_range("matrix index out of range");
  const Row& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  return (it != row.end() && it->first == c) ? it->second : Rat(0);
}

std::size_t RatMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const Row& r : rows_) n += r.size();
  return n;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
  return t;
}

RatVector RatMatrix::multiply(const RatVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  RatVector out(rows_.size(), Rat(0));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, a] : rows_[r]) out[r] += a * v[c];
  return out;
}

bool annihilates(const RatMatrix& m, const RatVector& v) {
  const RatVector prod = m.multiply(v);
  return std::all_of(prod.begin(), prod.end(), [](const Rat& x) { return x == 0; });
}

namespace {

// ---------------------------------------------------------------------------
// Integer rows and fraction-free elimination

using IntRow = std::vector<std::pair<std::uint32_t, BigInt>>;

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  BigInt g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_integer_row(const RatMatrix::Row& row) {
  BigInt l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    BigInt scaled = l / v.get_den() * v.get_num();
    out.emplace_back(static_cast<std::uint32_t>(c), std::move(scaled));
  }
  make_primitive(out);
  return out;
}

std::vector<IntRow> integer_rows(const RatMatrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row(r).empty()) rows.push_back(to_integer_row(m.row(r)));
  return rows;
}

// a * x - b * y, where both rows share their leading column.
IntRow combine(const BigInt& a, const IntRow& x, const BigInt& b, const IntRow& y) {
  IntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  BigInt tmp;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      tmp = a * x[i].second - b * y[j].second;
      if (tmp != 0) out.emplace_back(x[i].first, tmp);
      ++i;
      ++j;
    }
  }
  return out;
}

std::size_t bit_size(const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

// Row echelon form: one pivot row per pivot column, in increasing column order.
// Rows are bucketed by leading column; within a bucket the pivot is the
// sparsest row, ties broken by the smallest leading coefficient.
std::vector<IntRow> echelon(std::vector<IntRow> rows, std::size_t cols) {
  std::vector<std::vector<IntRow>> buckets(cols);
  for (IntRow& r : rows)
    if (!r.empty()) buckets[r.front().first].push_back(std::move(r));

  std::vector<IntRow> pivots;
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<IntRow> bucket = std::move(buckets[c]);
    if (bucket.empty()) continue;
    std::size_t best = 0;
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      const auto key = [&](const IntRow& r) { return std::pair(r.size(), bit_size(r.front().second)); };
      if (key(bucket[i]) < key(bucket[best])) best = i;
    }
    std::swap(bucket[0], bucket[best]);
    const IntRow& pivot = bucket[0];
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      const BigInt& lp = pivot.front().second;
      const BigInt& lr = bucket[i].front().second;
      BigInt g;
      mpz_gcd(g.get_mpz_t(), lp.get_mpz_t(), lr.get_mpz_t());
      IntRow reduced = combine(lp / g, bucket[i], lr / g, pivot);
      if (reduced.empty()) continue;
      make_primitive(reduced);
      buckets[reduced.front().first].push_back(std::move(reduced));
    }
    pivots.push_back(std::move(bucket[0]));
  }
  return pivots;
}

RatVector primitive_vector(RatVector v) {
  BigInt l = 1, g = 0;
  for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (Rat& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g > 1)
    for (Rat& x : v) x /= g;
  return v;
}

// ---------------------------------------------------------------------------
// Modular arithmetic

using ModRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(pow_mod(a, p - 2, p));
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Primes below 2^31, descending. Products of two residues fit in 64 bits.
std::uint32_t nth_prime(std::size_t n) {
  static std::mutex guard;
  static std::vector<std::uint32_t> cache;
  const std::lock_guard lock(guard);
  std::uint32_t candidate = cache.empty() ? 2147483648u : cache.back();
  while (cache.size() <= n) {
    do --candidate;
    while (!is_prime(candidate));
    cache.push_back(candidate);
  }
  return cache[n];
}

std::vector<ModRow> reduce_rows(const std::vector<IntRow>& rows, std::uint32_t p) {
  std::vector<ModRow> out;
  out.reserve(rows.size());
  for (const IntRow& r : rows) {
    ModRow m;
    for (const auto& [c, v] : r) {
      const auto residue = static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), p));
      if (residue) m.emplace_back(c, residue);
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Echelon form modulo p, each pivot row scaled to leading coefficient 1.
std::vector<ModRow> echelon_mod(std::vector<ModRow> rows, std::size_t cols, std::uint32_t p) {
  std::vector<std::vector<ModRow>> buckets(cols);
  for (ModRow& r : rows)
    if (!r.empty()) buckets[r.front().first].push_back(std::move(r));
  std::vector<ModRow> pivots;
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<ModRow> bucket = std::move(buckets[c]);
    if (bucket.empty()) continue;
    std::size_t best = 0;
    for (std::size_t i = 1; i < bucket.size(); ++i)
      if (bucket[i].size() < bucket[best].size()) best = i;
    std::swap(bucket[0], bucket[best]);
    ModRow pivot = std::move(bucket[0]);
    const std::uint64_t inv = inv_mod(pivot.front().second, p);
    for (auto& [col, v] : pivot) v = static_cast<std::uint32_t>(v * inv % p);
    for (std::size_t i = 1; i < bucket.size(); ++i) {
      const ModRow& r = bucket[i];
      const std::uint64_t factor = r.front().second;
      ModRow reduced;
      std::size_t a = 0, b = 0;
      while (a < r.size() || b < pivot.size()) {
        if (b == pivot.size() || (a < r.size() && r[a].first < pivot[b].first)) {
          reduced.push_back(r[a++]);
        } else {
          const std::uint64_t sub = factor * pivot[b].second % p;
          if (a == r.size() || pivot[b].first < r[a].first) {
            if (sub) reduced.emplace_back(pivot[b].first, static_cast<std::uint32_t>(p - sub));
          } else {
            const std::uint64_t val = (r[a].second + p - sub) % p;
            if (val) reduced.emplace_back(r[a].first, static_cast<std::uint32_t>(val));
            ++a;
          }
          ++b;
        }
      }
      if (!reduced.empty()) buckets[reduced.front().first].push_back(std::move(reduced));
    }
    pivots.push_back(std::move(pivot));
  }
  return pivots;
}

// Kernel vectors mod p from a monic echelon form: one per free column f, with
// entry 1 at f and 0 at the other free columns.
std::vector<std::vector<std::uint32_t>> kernel_mod(const std::vector<ModRow>& pivots,
                                                  std::size_t cols, std::uint32_t p,
                                                  const std::vector<std::size_t>& free_cols) {
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(free_cols.size());
  for (std::size_t f : free_cols) {
    std::vector<std::uint32_t> v(cols, 0);
    v[f] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const ModRow& row = pivots[k];
      std::uint64_t acc = 0;
      for (std::size_t t = 1; t < row.size(); ++t) acc = (acc + std::uint64_t(row[t].second) * v[row[t].first]) % p;
      v[row.front().first] = static_cast<std::uint32_t>((p - acc) % p);
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Rational reconstruction of a residue modulo m with |num|, den <= sqrt(m/2).
std::optional<Rat> reconstruct(const BigInt& residue, const BigInt& modulus) {
  BigInt bound;
  mpz_sqrt(bound.get_mpz_t(), BigInt(modulus / 2).get_mpz_t());
  BigInt r0 = modulus, r1 = residue, t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rat out(r1, t1);
  out.canonicalize();
  return out;
}

bool integer_annihilates(const std::vector<IntRow>& rows, const RatVector& v) {
  BigInt l = 1;
  for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<BigInt> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = l / v[i].get_den() * v[i].get_num();
  BigInt acc;
  for (const IntRow& r : rows) {
    acc = 0;
    for (const auto& [c, a] : r) acc += a * w[c];
    if (acc != 0) return false;
  }
  return true;
}

std::vector<IntRow> transpose_rows(const std::vector<IntRow>& rows, std::size_t cols) {
  std::vector<IntRow> t(cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) t[c].emplace_back(static_cast<std::uint32_t>(r), v);
  return t;
}

}  // namespace

std::size_t rank(const RatMatrix& m) { return echelon(integer_rows(m), m.cols()).size(); }

KernelBasis kernel_basis(const RatMatrix& m) {
  const std::vector<IntRow> pivots = echelon(integer_rows(m), m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (const IntRow& r : pivots) is_pivot[r.front().first] = true;

  KernelBasis basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const IntRow& row = pivots[k];
      Rat acc = 0;
      for (std::size_t t = 1; t < row.size(); ++t)
        if (v[row[t].first] != 0) acc += row[t].second * v[row[t].first];
      v[row.front().first] = -acc / row.front().second;
    }
    basis.vectors.push_back(primitive_vector(std::move(v)));
  }
  basis.dimension = basis.vectors.size();
  return basis;
}

CertifiedRank rank_certified_detailed(const RatMatrix& m) {
  constexpr std::size_t kMaxPrimes = 64;
  const std::vector<IntRow> rows = integer_rows(m);
  const std::size_t nrows = m.rows(), ncols = m.cols();
  if (rows.empty()) return {0, CertifiedRank::Route::Trivial, 0};

  auto rank_mod = [&](std::uint32_t p) { return echelon_mod(reduce_rows(rows, p), ncols, p).size(); };
  const std::size_t r1 = rank_mod(nth_prime(0));
  const std::size_t r2 = rank_mod(nth_prime(1));
  // A nonzero minor mod p is a nonzero integer, so each r_i is a lower bound.
  if (r1 != r2) return {rank(m), CertifiedRank::Route::RationalFallback, 2};
  const std::size_t r = r1;
  if (r == std::min(nrows, ncols)) return {r, CertifiedRank::Route::Modular, 2};

  // Upper bound: an exactly verified kernel of dimension (side - r).
  const bool use_right = ncols <= nrows;
  const std::vector<IntRow> side_rows = use_right ? rows : transpose_rows(rows, ncols);
  const std::size_t side_cols = use_right ? ncols : nrows;

  std::vector<std::size_t> reference_pivots;
  std::vector<std::size_t> free_cols;
  std::vector<std::vector<BigInt>> residues;  // per kernel vector, per column
  BigInt modulus = 1;

  for (std::size_t k = 0; k < kMaxPrimes; ++k) {
    const std::uint32_t p = nth_prime(k);
    const std::vector<ModRow> piv = echelon_mod(reduce_rows(side_rows, p), side_cols, p);
    if (piv.size() != r) continue;
    std::vector<std::size_t> pivot_cols;
    for (const ModRow& row : piv) pivot_cols.push_back(row.front().first);
    if (reference_pivots.empty()) {
      reference_pivots = pivot_cols;
      std::vector<bool> is_pivot(side_cols, false);
      for (std::size_t c : pivot_cols) is_pivot[c] = true;
      for (std::size_t c = 0; c < side_cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
      residues.assign(free_cols.size(), std::vector<BigInt>(side_cols, BigInt(0)));
    } else if (pivot_cols != reference_pivots) {
      continue;
    }
    const auto kernel = kernel_mod(piv, side_cols, p, free_cols);
    // Chinese remaindering: x = a + modulus * ((b - a) * modulus^{-1} mod p).
    const std::uint64_t minv = inv_mod(static_cast<std::uint32_t>(mpz_fdiv_ui(modulus.get_mpz_t(), p)), p);
    for (std::size_t i = 0; i < kernel.size(); ++i)
      for (std::size_t c : reference_pivots) {
        BigInt& a = residues[i][c];
        const std::uint64_t amod = mpz_fdiv_ui(a.get_mpz_t(), p);
        const std::uint64_t delta = (kernel[i][c] + p - amod) % p * minv % p;
        a += modulus * static_cast<unsigned long>(delta);
      }
    modulus *= p;

    bool all_ok = true;
    for (std::size_t i = 0; i < free_cols.size() && all_ok; ++i) {
      RatVector v(side_cols, Rat(0));
      v[free_cols[i]] = 1;
      for (std::size_t c : reference_pivots) {
        auto q = reconstruct(residues[i][c], modulus);
        if (!q) {
          all_ok = false;
          break;
        }
        v[c] = *q;
      }
      if (all_ok) all_ok = integer_annihilates(side_rows, v);
    }
    if (all_ok) return {r, CertifiedRank::Route::Modular, k + 1};
  }
  return {rank(m), CertifiedRank::Route::RationalFallback, kMaxPrimes};
}

}  // namespace freecurve
