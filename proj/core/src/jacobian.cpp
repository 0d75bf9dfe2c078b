#include <freecurve/jacobian.hpp>

#include <freecurve/errors.hpp>

#include <algorithm>
#include <future>

namespace freecurve {

JacobianContext::JacobianContext(HomogeneousPolynomial f) : f_(std::move(f)) {
  if (f_.degree() < 2) throw ValidationError("curve degree must be at least 2");
  if (f_.is_zero()) throw ValidationError("zero polynomial does not define a curve");
  for (std::size_t k = 0; k < 3; ++k) partials_[k] = f_.derivative(static_cast<Var>(k));
}

RatMatrix JacobianContext::syzygy_matrix(unsigned r) const {
  const unsigned target = r + degree() - 1;
  const auto sources = monomials_of_degree(r);
  RatMatrix m(monomial_count(target), 3 * sources.size());
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t s = 0; s < sources.size(); ++s) {
      const std::size_t col = k * sources.size() + s;
      const Exponent& e = sources[s];
      for (const auto& [pe, c] : partials_[k].terms())
        m.set(monomial_index({pe[0] + e[0], pe[1] + e[1], pe[2] + e[2]}), col, c);
    }
  return m;
}

std::size_t milnor_dim(const JacobianContext& ctx, unsigned t, LinalgMode mode) {
  const unsigned d = ctx.degree();
  const std::size_t full = monomial_count(t);
  if (t + 1 < d) return full;
  const RatMatrix m = ctx.syzygy_matrix(t - d + 1);
  const std::size_t rk = mode == LinalgMode::Modular ? rank_certified(m) : rank(m);
  return full - rk;
}

HilbertProfile hilbert_profile(const JacobianContext& ctx, unsigned extend, LinalgMode mode) {
  const unsigned start = 3 * ctx.degree() - 6;
  const unsigned count = 3 + extend;
  std::vector<std::future<std::size_t>> jobs;
  for (unsigned i = 0; i < count; ++i)
    jobs.push_back(std::async(std::launch::async, [&ctx, t = start + i, mode] {
      return milnor_dim(ctx, t, mode);
    }));

  HilbertProfile profile;
  for (unsigned i = 0; i < count; ++i) profile.window.emplace_back(start + i, jobs[i].get());
  const auto& w = profile.window;
  const std::size_t n = w.size();
  profile.smooth = w[0].second == 1 &&
                   std::all_of(w.begin() + 1, w.end(), [](const auto& tv) { return tv.second == 0; });
  if (profile.smooth || (w[n - 1].second == w[n - 2].second && w[n - 2].second == w[n - 3].second))
    profile.stabilized_value = w[n - 1].second;
  return profile;
}

std::size_t total_tjurina(const JacobianContext& ctx, LinalgMode mode) {
  const HilbertProfile profile = hilbert_profile(ctx, 0, mode);
  if (!profile.stabilized_value) {
    std::string values;
    for (const auto& [t, v] : profile.window)
      values += (values.empty() ? "" : ", ") + std::to_string(t) + ":" + std::to_string(v);
    throw UnstableError("Hilbert function of the Milnor algebra is not stable on its window {" +
                        values + "}; the curve is probably not reduced");
  }
  return *profile.stabilized_value;
}

std::size_t syzygy_dimension(const JacobianContext& ctx, unsigned r) {
  const RatMatrix m = ctx.syzygy_matrix(r);
  return m.cols() - rank(m);
}

namespace {

SyzygyWitness witness_from_vector(const RatVector& v, unsigned r) {
  const auto sources = monomials_of_degree(r);
  Rat sign = 1;
  for (const Rat& x : v)
    if (x != 0) {
      sign = x < 0 ? -1 : 1;
      break;
    }
  SyzygyWitness w{r, {HomogeneousPolynomial(r), HomogeneousPolynomial(r), HomogeneousPolynomial(r)}};
  for (std::size_t k = 0; k < 3; ++k) {
    HomogeneousPolynomial::Terms terms;
    for (std::size_t s = 0; s < sources.size(); ++s) {
      const Rat& c = v[k * sources.size() + s];
      if (c != 0) terms.emplace(sources[s], sign * c);
    }
    w.triple[k] = HomogeneousPolynomial(r, terms);
  }
  return w;
}

}  // namespace

MdrResult mdr(const JacobianContext& ctx) {
  const unsigned d = ctx.degree();
  // Below degree d - 1 there are no Koszul relations, so every kernel vector
  // is a genuine syzygy.
  for (unsigned r = 0; r + 2 <= d; ++r) {
    const KernelBasis kernel = kernel_basis(ctx.syzygy_matrix(r));
    if (kernel.dimension > 0) return witness_from_vector(kernel.vectors.front(), r);
  }
  return AtLeast{d - 1};
}

bool verify_witness(const JacobianContext& ctx, const SyzygyWitness& w) {
  bool all_zero = true;
  for (const auto& p : w.triple) all_zero = all_zero && p.is_zero();
  if (all_zero) return false;
  const auto& g = ctx.partials();
  HomogeneousPolynomial sum(w.r + ctx.degree() - 1);
  for (std::size_t k = 0; k < 3; ++k) sum = sum + w.triple[k] * g[k];
  return sum.is_zero();
}

}  // namespace freecurve
