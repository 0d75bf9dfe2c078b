#include <freecurve/corpus.hpp>

#include <freecurve/errors.hpp>
#include <freecurve/parser.hpp>
#include <freecurve/report.hpp>

#include <chrono>
#include <functional>

namespace freecurve {

std::string to_string(Source s) {
  switch (s) {
    case Source::Published: return "published";
    case Source::Derived: return "derived";
    case Source::Trivial: return "trivial";
  }
  return {};
}

namespace {

using Generator = std::function<CorpusCase(long)>;

HomogeneousPolynomial product(const std::vector<HomogeneousPolynomial>& parts) {
  HomogeneousPolynomial f = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) f = f * parts[i];
  return f;
}

std::vector<HomogeneousPolynomial> parse_all(const std::vector<std::string>& texts) {
  std::vector<HomogeneousPolynomial> out;
  for (const auto& t : texts) out.push_back(parse_polynomial(t));
  return out;
}

ProjectivePoint pt(long a, long b, long c) { return normalize_point({Rat(a), Rat(b), Rat(c)}); }

CorpusCase arrangement(std::string name, std::string description, const std::vector<std::string>& conics) {
  CorpusCase c;
  c.name = c.family = std::move(name);
  c.description = std::move(description);
  c.components = parse_all(conics);
  c.f = product(c.components);
  return c;
}

unsigned nat(long v) { return static_cast<unsigned>(v); }

CorpusCase persson_triconical(long) {
  CorpusCase c = arrangement("persson_triconical", "Persson's triconical sextic",
                             {"x^2+y^2-z^2", "2*x^2+y^2+2*x*z", "2*x^2+y^2-2*x*z"});
  auto& e = c.expected;
  e.d = {6, Source::Trivial};
  e.d1 = {2, Source::Derived};
  e.tau = {19, Source::Derived};
  e.nu = {0, Source::Derived};
  e.verdict = {"Free", Source::Published};
  e.inventory = {{{"A1", 2}, {"A3", 1}, {"A7", 2}}, Source::Published};
  return c;
}

CorpusCase persson_deformed(long) {
  CorpusCase c = arrangement("persson_deformed", "deformation of the triconical sextic",
                             {"2*x^2+2*y^2+3*x*z+z^2", "2*x^2+2*y^2-3*x*z+z^2", "x^2+4*y^2-z^2"});
  auto& e = c.expected;
  e.d = {6, Source::Trivial};
  e.d1 = {3, Source::Published};
  e.tau = {18, Source::Derived};
  e.nu = {1, Source::Derived};
  e.verdict = {"NearlyFree", Source::Published};
  e.inventory = {{{"A1", 4}, {"A7", 2}}, Source::Published};
  return c;
}

CorpusCase celal_three_conics(long) {
  CorpusCase c = arrangement("celal_three_conics", "three conics with three A5 points and a triple point",
                             {"-3*x^2+x*y+y*z+z*x", "-3*y^2+x*y+y*z+z*x", "-3*z^2+x*y+y*z+z*x"});
  auto& e = c.expected;
  e.d = {6, Source::Trivial};
  e.d1 = {2, Source::Published};
  e.tau = {19, Source::Published};
  e.nu = {0, Source::Published};
  e.verdict = {"Free", Source::Published};
  e.inventory = {{{"A5", 3}, {"D4", 1}}, Source::Published};
  return c;
}

CorpusCase p4_four_conics(long) {
  CorpusCase c = arrangement("p4_four_conics", "four conics with four collinear A7 points and eight nodes",
                             {"x^2+y^2-z^2", "2*x^2+y^2+2*x*z", "x^2+y^2+2*x*z", "4*x^2+6*y^2+4*x*z-8*z^2"});
  auto& e = c.expected;
  e.d = {8, Source::Trivial};
  e.d1 = {3, Source::Published};
  e.tau = {36, Source::Published};
  e.nu = {1, Source::Published};
  e.verdict = {"NearlyFree", Source::Published};
  e.inventory = {{{"A1", 8}, {"A7", 4}}, Source::Published};
  for (const auto& p : {pt(-1, 0, 1), pt(0, 0, 1), pt(-2, 0, 1), pt(1, 0, 1)})
    e.points.push_back({p, "A7", 7, 7, Source::Published});
  c.notes.push_back("fourth conic taken with z^2 coefficient -8; with -9 it misses (1:0:1) and (-2:0:1)");
  return c;
}

CorpusCase ploski(long m) {
  CorpusCase c;
  c.family = "ploski";
  c.parameter = m;
  c.name = "ploski/" + std::to_string(m);
  c.description = "Ploski's moustache: m conics xz + i x^2 + y^2 sharing one point";
  for (long i = 1; i <= m; ++i)
    c.components.push_back(parse_polynomial("x*z+" + std::to_string(i) + "*x^2+y^2"));
  c.f = product(c.components);
  const auto n = static_cast<std::size_t>(2 * m - 1);
  const std::size_t mu = n * n - static_cast<std::size_t>(m);
  const std::size_t tau = n * n - static_cast<std::size_t>(2 * m - 2);
  const std::string type = m == 2 ? "A7" : "Descriptor(" + std::to_string(m) + ")";
  auto& e = c.expected;
  e.d = {nat(2 * m), Source::Trivial};
  e.d1 = {1, Source::Published};
  e.tau = {tau, Source::Published};
  e.nu = {0, Source::Published};
  e.verdict = {"Free", Source::Published};
  e.inventory = {{{type, 1}}, Source::Derived};
  e.points.push_back({pt(0, 0, 1), std::nullopt, mu, tau, Source::Published});
  e.points.push_back({pt(0, 0, 1), type, std::nullopt, std::nullopt, Source::Derived});
  return c;
}

CorpusCase pencil_four_points(long m) {
  CorpusCase c;
  c.family = "pencil_four_points";
  c.parameter = m;
  c.name = "pencil_four_points/" + std::to_string(m);
  c.description = "m members f, g, f + i g (i = 1..m-2) of the pencil through (+-1:+-1:1)";
  const auto f = parse_polynomial("3*x^2+y^2-4*z^2"), g = parse_polynomial("x^2+3*y^2-4*z^2");
  c.components = {f, g};
  for (long i = 1; i <= m - 2; ++i) c.components.push_back(f + Rat(i) * g);
  c.f = product(c.components);
  c.assume_qh = true;
  const auto k = static_cast<std::size_t>(m - 1);
  const std::string type = m == 3 ? "D4" : "OrdinaryMultiple(" + std::to_string(m) + ")";
  auto& e = c.expected;
  e.d = {nat(2 * m), Source::Trivial};
  e.d1 = {2, Source::Published};
  e.witness = {{"y*z", "x*z", "x*y"}, Source::Published};
  e.tau = {4 * k * k, Source::Published};
  e.nu = {3, Source::Published};
  e.verdict = {"Neither", Source::Published};
  e.inventory = {{{type, 4}}, Source::Derived};
  for (const auto& p : {pt(1, 1, 1), pt(1, -1, 1), pt(-1, 1, 1), pt(-1, -1, 1)})
    e.points.push_back({p, type, std::nullopt, k * k, Source::Derived});
  c.notes.push_back("ordinary base points treated as quasi-homogeneous (pencil property)");
  return c;
}

CorpusCase pencil_two_points(long k) {
  CorpusCase c;
  c.family = "pencil_two_points";
  c.parameter = k;
  c.name = "pencil_two_points/" + std::to_string(k);
  c.description = "x^k y^k + z^(2k): k conics xy = w z^2 (w^k = -1) through (1:0:0) and (0:1:0)";
  const std::string ks = std::to_string(k);
  c.f = parse_polynomial("x^" + ks + "*y^" + ks + "+z^" + std::to_string(2 * k));
  c.points = {pt(1, 0, 0), pt(0, 1, 0)};
  IncidenceStructure inc;
  inc.components = static_cast<std::size_t>(k);
  for (unsigned p = 0; p < 2; ++p)
    for (std::size_t i = 0; i < inc.components; ++i) inc.through[p].insert(i);
  c.incidence = inc;
  const auto local = static_cast<std::size_t>((2 * k - 1) * (k - 1));
  auto& e = c.expected;
  e.d = {nat(2 * k), Source::Trivial};
  e.d1 = {1, Source::Published};
  e.tau = {2 * local, Source::Derived};
  e.nu = {1, Source::Published};
  e.verdict = {"NearlyFree", Source::Published};
  for (const auto& p : c.points) e.points.push_back({p, std::nullopt, std::nullopt, local, Source::Published});
  c.notes.push_back("components are not defined over Q; incidence supplied explicitly");
  return c;
}

CorpusCase two_conics_a7(long eps) {
  CorpusCase c;
  c.family = "two_conics_a7";
  c.parameter = eps;
  c.name = "two_conics_a7/" + std::to_string(eps);
  c.description = "x^2 - yz and x^2 - yz + e y^2, meeting only at (0:0:1)";
  c.components = {parse_polynomial("x^2-y*z"), parse_polynomial("x^2-y*z+" + std::to_string(eps) + "*y^2")};
  c.f = product(c.components);
  auto& e = c.expected;
  e.d = {4, Source::Trivial};
  e.d1 = {1, Source::Derived};
  e.tau = {7, Source::Derived};
  e.nu = {0, Source::Derived};
  e.verdict = {"Free", Source::Derived};
  e.inventory = {{{"A7", 1}}, Source::Derived};
  e.points.push_back({pt(0, 0, 1), "A7", 7, 7, Source::Derived});
  return c;
}

struct Registered {
  CorpusEntry entry;
  Generator make;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r = [] {
    std::vector<Registered> v;
    const auto fixed = [&v](const char* name, const char* text, Generator g) {
      v.push_back({{name, text, std::nullopt, 0, 0}, std::move(g)});
    };
    const auto family = [&v](const char* name, const char* text, const char* param, long lo, long hi,
                             Generator g) { v.push_back({{name, text, param, lo, hi}, std::move(g)}); };
    fixed("persson_triconical", "Persson's triconical sextic", persson_triconical);
    fixed("persson_deformed", "tacnode-to-nodes deformation of the triconical sextic", persson_deformed);
    fixed("celal_three_conics", "three conics with three A5 points and an ordinary triple point",
          celal_three_conics);
    fixed("p4_four_conics", "four conics with four A7 points and eight nodes", p4_four_conics);
    family("ploski", "m conics with a single common point", "m", 2, 5, ploski);
    family("pencil_four_points", "m conics of a pencil with four base points", "m", 3, 6, pencil_four_points);
    family("pencil_two_points", "x^k y^k + z^(2k), k conics with two base points", "k", 2, 6,
           pencil_two_points);
    family("two_conics_a7", "two conics with a single A7 contact", "e", 1, 3, two_conics_a7);
    return v;
  }();
  return r;
}

const Registered& find(const std::string& name) {
  for (const auto& r : registry())
    if (r.entry.name == name) return r;
  throw NotFoundError("no corpus entry named '" + name + "'");
}

}  // namespace

CorpusCase CorpusEntry::instantiate(std::optional<long> parameter) const {
  const Registered& r = find(name);
  if (!parametrized()) {
    if (parameter) throw ValidationError("corpus entry '" + name + "' takes no parameter");
    return r.make(0);
  }
  if (!parameter || *parameter < parameter_min || *parameter > parameter_max)
    throw ValidationError("corpus entry '" + name + "' needs " + *parameter_name + " in [" +
                          std::to_string(parameter_min) + ", " + std::to_string(parameter_max) + "]");
  return r.make(*parameter);
}

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;
    for (const auto& r : registry()) v.push_back(r.entry);
    return v;
  }();
  return entries;
}

CorpusCase corpus_lookup(const std::string& name) {
  const auto slash = name.find('/');
  if (slash == std::string::npos) return find(name).entry.instantiate();
  const std::string base = name.substr(0, slash), arg = name.substr(slash + 1);
  const CorpusEntry& entry = find(base).entry;
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (arg.empty() || used != arg.size()) throw ValidationError("bad corpus parameter '" + arg + "'");
  return entry.instantiate(value);
}

CorpusCase corpus_lookup(const std::string& name, long parameter) {
  return find(name).entry.instantiate(parameter);
}

std::vector<CorpusCase> corpus_cases() {
  std::vector<CorpusCase> out;
  for (const auto& e : corpus_entries()) {
    if (!e.parametrized()) {
      out.push_back(e.instantiate());
      continue;
    }
    for (long p = e.parameter_min; p <= e.parameter_max; ++p) out.push_back(e.instantiate(p));
  }
  return out;
}

namespace {

template <typename T>
std::string show(const T& v) {
  if constexpr (std::is_same_v<T, std::string>)
    return v;
  else
    return std::to_string(v);
}

std::string show(const std::map<std::string, std::size_t>& inv) {
  std::string out = "{";
  for (const auto& [k, n] : inv) out += (out.size() > 1 ? ", " : "") + k + ":" + std::to_string(n);
  return out + "}";
}

template <typename T, typename U>
void compare(std::vector<FieldDiff>& diffs, const std::string& field, const std::optional<Tagged<T>>& want,
             const std::optional<U>& got) {
  if (!want) return;
  if (!got) {
    diffs.push_back({field, show(want->value), "unknown"});
  } else if (!(static_cast<T>(*got) == want->value)) {
    diffs.push_back({field, show(want->value), show(static_cast<T>(*got))});
  }
}

void compare_point(std::vector<FieldDiff>& diffs, const ExpectedPoint& want, const AnalysisReport& r) {
  const std::string tag = "point " + to_string(want.point);
  const SingularPointRecord* rec = nullptr;
  if (r.survey)
    for (const auto& x : r.survey->records)
      if (x.point == want.point) rec = &x;
  const LocalPointData* local = nullptr;
  for (const auto& x : r.local_points)
    if (x.point == want.point) local = &x;
  if (!rec && !local) {
    diffs.push_back({tag, "present", "missing"});
    return;
  }
  if (want.type) {
    const std::string got = rec ? rec->type.to_string() : "unclassified";
    if (got != *want.type) diffs.push_back({tag + " type", *want.type, got});
  }
  const auto check = [&](const char* what, std::optional<std::size_t> expect, std::optional<std::size_t> got) {
    if (!expect) return;
    if (!got)
      diffs.push_back({tag + " " + what, std::to_string(*expect), "unknown"});
    else if (*got != *expect)
      diffs.push_back({tag + " " + what, std::to_string(*expect), std::to_string(*got)});
  };
  check("mu", want.mu, rec ? std::optional<std::size_t>(rec->mu) : std::optional<std::size_t>(local->milnor));
  check("tau", want.tau, rec ? rec->best_tau() : std::optional<std::size_t>(local->tjurina));
}

}  // namespace

std::vector<RegressionRow> run_regression(const std::vector<CorpusCase>& cases) {
  std::vector<RegressionRow> rows;
  for (const CorpusCase& c : cases) {
    RegressionRow row;
    row.name = c.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      AnalysisOptions opts;
      opts.assume_qh = c.assume_qh;
      const AnalysisReport r = analyze(input_from_corpus(c), opts);
      const auto& e = c.expected;
      compare(row.diffs, "d", e.d, std::optional<unsigned>(r.degree));
      compare(row.diffs, "d1", e.d1, exact_value(r.d1()));
      compare(row.diffs, "tau", e.tau, r.tau());
      compare(row.diffs, "nu", e.nu, r.freeness ? r.freeness->nu : std::nullopt);
      compare(row.diffs, "verdict", e.verdict,
              r.freeness ? std::optional<std::string>(r.freeness->verdict.name()) : std::nullopt);
      compare(row.diffs, "inventory", e.inventory, r.inventory());
      if (e.witness) {
        std::string got = "none";
        if (const auto* w = std::get_if<SyzygyWitness>(&r.mdr))
          got = w->triple[0].to_string() + ", " + w->triple[1].to_string() + ", " + w->triple[2].to_string();
        const auto& t = e.witness->value;
        const std::string want = t[0] + ", " + t[1] + ", " + t[2];
        if (got != want || !r.witness_verified) row.diffs.push_back({"witness", want, got});
      }
      for (const auto& p : e.points) compare_point(row.diffs, p, r);
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    row.passed = !row.error && row.diffs.empty();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RegressionRow> run_regression(const std::optional<std::vector<std::string>>& names) {
  if (!names) return run_regression(corpus_cases());
  std::vector<RegressionRow> rows;
  for (const auto& n : *names) {
    try {
      auto part = run_regression(std::vector<CorpusCase>{corpus_lookup(n)});
      rows.insert(rows.end(), part.begin(), part.end());
    } catch (const Error& ex) {
      RegressionRow row;
      row.name = n;
      row.error = ex.what();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace freecurve
