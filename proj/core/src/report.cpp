#include <freecurve/report.hpp>

#include <freecurve/errors.hpp>
#include <freecurve/parser.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace freecurve {

using nlohmann::json;

namespace {

std::string strip_comment(std::string line) {
  if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (auto s = strip_comment(line); !s.empty()) out.push_back(std::move(s));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CurveInput input_from_expression(const std::string& text, std::string label) {
  ParsedExpression parsed = parse_expression(text);
  CurveInput in;
  in.label = std::move(label);
  in.f = std::move(parsed.poly);
  if (parsed.factors.size() >= 2) in.components = std::move(parsed.factors);
  return in;
}

CurveInput input_from_arrangement(const std::string& text, std::string label) {
  CurveInput in;
  in.label = std::move(label);
  std::size_t lineno = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    ++lineno;
    const std::string expr = strip_comment(line);
    if (expr.empty()) continue;
    try {
      in.components.push_back(parse_polynomial(expr));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.position(), "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (in.components.back().degree() != 2 || in.components.back().is_zero())
      throw ValidationError("line " + std::to_string(lineno) + ": expected a conic, got degree " +
                            std::to_string(in.components.back().degree()));
  }
  if (in.components.empty()) throw ValidationError("arrangement '" + in.label + "' has no components");
  in.f = in.components.front();
  for (std::size_t i = 1; i < in.components.size(); ++i) in.f = in.f * in.components[i];
  if (in.components.size() == 1) in.components.clear();
  return in;
}

CurveInput input_from_corpus(const CorpusCase& c) {
  CurveInput in;
  in.label = "corpus:" + c.name;
  in.f = c.f;
  in.components = c.components;
  in.points = c.points;
  in.incidence = c.incidence;
  in.assume_qh = c.assume_qh;
  in.corpus = c;
  return in;
}

CurveInput load_input(const std::string& argument) {
  if (argument.rfind("corpus:", 0) == 0) return input_from_corpus(corpus_lookup(argument.substr(7)));
  std::error_code ec;
  if (std::filesystem::is_regular_file(argument, ec)) {
    const std::string text = read_file(argument);
    const auto lines = content_lines(text);
    if (lines.size() == 1) return input_from_expression(lines.front(), argument);
    return input_from_arrangement(text, argument);
  }
  return input_from_expression(argument);
}

std::vector<ProjectivePoint> parse_points(const std::string& text) {
  static const std::regex sep(R"([\s:,()]+)");
  std::vector<ProjectivePoint> out;
  std::size_t lineno = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const std::string s = strip_comment(line);
    if (s.empty()) continue;
    std::vector<std::string> parts;
    for (std::sregex_token_iterator it(s.begin(), s.end(), sep, -1), end; it != end; ++it)
      if (it->length() > 0) parts.push_back(*it);
    if (parts.size() != 3)
      throw ParseError(ParseError::Kind::Syntax, lineno,
                       "line " + std::to_string(lineno) + ": expected a point (a:b:c)");
    ProjectivePoint p;
    for (std::size_t i = 0; i < 3; ++i) {
      try {
        p[i] = parse_rat(parts[i]);
      } catch (const std::invalid_argument&) {
        throw ParseError(ParseError::Kind::Syntax, lineno,
                         "line " + std::to_string(lineno) + ": bad coordinate '" + parts[i] + "'");
      }
    }
    if (p[0] == 0 && p[1] == 0 && p[2] == 0)
      throw ValidationError("line " + std::to_string(lineno) + ": (0:0:0) is not a point");
    out.push_back(normalize_point(p));
  }
  return out;
}

MdrValue AnalysisReport::d1() const {
  if (const auto* w = std::get_if<SyzygyWitness>(&mdr)) return w->r;
  return std::get<AtLeast>(mdr);
}

std::optional<std::map<std::string, std::size_t>> AnalysisReport::inventory() const {
  if (!survey || !survey->inventory_complete()) return std::nullopt;
  std::map<std::string, std::size_t> inv;
  for (const auto& r : survey->records) ++inv[r.type.to_string()];
  if (const std::size_t n = survey->unlocated_nodes.value_or(0)) inv["A1"] += n;
  return inv;
}

int AnalysisReport::exit_code() const {
  if (!tau() || !freeness) return 2;
  return freeness->verdict.kind == Verdict::Kind::Indeterminate ? 2 : 0;
}

namespace {

bool all_conics(const std::vector<HomogeneousPolynomial>& parts) {
  return parts.size() >= 2 &&
         std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.degree() == 2; });
}

}  // namespace

AnalysisReport analyze(const CurveInput& input, const AnalysisOptions& options) {
  AnalysisReport r;
  r.label = input.label;
  r.f = input.f;
  r.components = input.components;
  const JacobianContext ctx(input.f);
  r.degree = ctx.degree();
  const bool assume_qh = options.assume_qh || input.assume_qh;

  r.mdr = mdr(ctx);
  if (const auto* w = std::get_if<SyzygyWitness>(&r.mdr)) r.witness_verified = verify_witness(ctx, *w);
  r.hilbert = hilbert_profile(ctx, options.window_extend, options.linalg);
  if (r.hilbert.smooth) r.notes.push_back("smooth curve: the Milnor algebra vanishes from degree 3d-5");

  if (r.tau()) {
    r.freeness = build_report(r.degree, r.d1(), *r.tau());
  } else {
    std::string values;
    for (const auto& [t, v] : r.hilbert.window)
      values += (values.empty() ? "" : ", ") + std::to_string(t) + ":" + std::to_string(v);
    r.notes.push_back("Hilbert function not stable on {" + values + "}; the curve is probably not reduced");
  }

  std::vector<ProjectivePoint> points = input.points;
  points.insert(points.end(), options.extra_points.begin(), options.extra_points.end());

  if (all_conics(input.components)) {
    try {
      const ConicArrangement arr = ConicArrangement::from_polynomials(input.components);
      ClassifyOptions copts;
      copts.assume_qh = assume_qh;
      copts.local_algebra = true;
      r.survey = survey(arr, points, copts);
    } catch (const ValidationError& e) {
      r.notes.push_back(std::string("no singular survey: ") + e.what());
    }
  } else if (!input.components.empty()) {
    r.notes.push_back("no singular survey: components are not all conics");
  }

  if (!r.survey) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const ProjectivePoint& p : points) {
      try {
        const LocalInvariants li = local_invariants(input.f, p);
        if (li.milnor == 0)
          r.notes.push_back("point " + to_string(p) + " is not a singular point of the curve");
        else
          r.local_points.push_back({p, li.milnor, li.tjurina});
      } catch (const Error& e) {
        r.notes.push_back("point " + to_string(p) + ": " + e.what());
      }
    }
  }

  if (r.survey && r.freeness) {
    r.bound = check_bound_consistency(*r.freeness, *r.survey, assume_qh);
    r.freeness->arnold_exponent = r.bound.alpha;
    r.freeness->mdr_lower_bound = r.bound.bound;
    if (r.bound.holds == false)
      r.notes.push_back("mdr lower bound violated: d1 < " + to_string(*r.bound.bound));
  }

  if (r.survey) {
    r.weak_type = weak_type(*r.survey, input.components.size());
    if (r.weak_type) r.count_ok = bezout_count_check(*r.weak_type);
    r.local_tau_sum = r.survey->tau_sum();
  } else if (!r.local_points.empty()) {
    std::size_t sum = 0;
    for (const auto& lp : r.local_points) sum += lp.tjurina;
    r.local_tau_sum = sum;
    r.notes.push_back("local tau sum taken over the supplied points only");
  }
  if (r.local_tau_sum && r.tau()) r.local_matches_global = *r.local_tau_sum == *r.tau();

  if (options.supersolvable) {
    SupersolvabilityCheck check;
    if (input.incidence) {
      check.mode = "user-incidence";
      check.evaluated = true;
      check.modular_point = is_combinatorially_supersolvable(*input.incidence);
    } else {
      check.mode = "geometric";
      if (!r.survey) {
        check.note = "no survey and no incidence supplied";
      } else if (const auto inc = incidence_from_survey(*r.survey, input.components.size())) {
        check.evaluated = true;
        check.modular_point = is_combinatorially_supersolvable(*inc);
      } else {
        check.note = "survey has intersections not located over Q";
      }
    }
    r.supersolvable = check;
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json rat(const Rat& q) { return to_string(q); }

json point(const ProjectivePoint& p) { return json::array({rat(p[0]), rat(p[1]), rat(p[2])}); }

template <typename T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Rat>)
    return rat(*v);
  else
    return *v;
}

json to_json(const SingularPointRecord& r) {
  return {{"point", point(r.point)},
          {"members", r.members},
          {"pair_multiplicities", r.pair_mults},
          {"type", r.type.to_string()},
          {"mu", r.mu},
          {"tau", opt(r.tau)},
          {"mu_local_algebra", opt(r.mu_algebra)},
          {"tau_local_algebra", opt(r.tau_algebra)}};
}

json to_json(const FreenessReport& f) {
  json d1 = nullptr, at_least = nullptr;
  if (const auto v = exact_value(f.d1))
    d1 = *v;
  else
    at_least = std::get<AtLeast>(f.d1).bound;
  return {{"d", f.d},
          {"d1", d1},
          {"d1_at_least", at_least},
          {"tau", f.tau},
          {"eta", opt(f.eta)},
          {"nu", opt(f.nu)},
          {"verdict", f.verdict.name()},
          {"verdict_detail", f.verdict.to_string()},
          {"arnold_exponent", opt(f.arnold_exponent)},
          {"mdr_lower_bound", opt(f.mdr_lower_bound)},
          {"notes", f.notes}};
}

template <typename T>
json tagged(const std::optional<Tagged<T>>& t) {
  if (!t) return nullptr;
  return {{"value", t->value}, {"source", to_string(t->source)}};
}

json to_json(const CorpusCase& c) {
  const auto& e = c.expected;
  json points = json::array();
  for (const auto& p : e.points)
    points.push_back({{"point", point(p.point)},
                      {"type", opt(p.type)},
                      {"mu", opt(p.mu)},
                      {"tau", opt(p.tau)},
                      {"source", to_string(p.source)}});
  return {{"name", c.name},
          {"description", c.description},
          {"parameter", opt(c.parameter)},
          {"notes", c.notes},
          {"expected",
           {{"d", tagged(e.d)},
            {"d1", tagged(e.d1)},
            {"tau", tagged(e.tau)},
            {"nu", tagged(e.nu)},
            {"verdict", tagged(e.verdict)},
            {"inventory", tagged(e.inventory)},
            {"witness", tagged(e.witness)},
            {"points", points}}}};
}

}  // namespace

json to_json(const LocusSurvey& s) {
  json records = json::array();
  for (const auto& r : s.records) records.push_back(to_json(r));
  json residuals = json::array();
  for (const auto& [pair, n] : s.residual_per_pair)
    residuals.push_back({{"pair", {pair.first, pair.second}}, {"unlocated", n}});
  return {{"records", records},
          {"residuals", residuals},
          {"complete", s.complete},
          {"unlocated_nodes", opt(s.unlocated_nodes)},
          {"inventory_complete", s.inventory_complete()},
          {"tau_sum", opt(s.tau_sum())},
          {"notes", s.notes}};
}

json to_json(const AnalysisReport& r) {
  json components = json::array();
  for (const auto& c : r.components) components.push_back(c.to_string());

  json mdr_block;
  if (const auto* w = std::get_if<SyzygyWitness>(&r.mdr)) {
    mdr_block = {{"d1", w->r},
                 {"at_least", nullptr},
                 {"witness",
                  {{"triple", {w->triple[0].to_string(), w->triple[1].to_string(), w->triple[2].to_string()}},
                   {"verified", r.witness_verified}}}};
  } else {
    mdr_block = {{"d1", nullptr}, {"at_least", std::get<AtLeast>(r.mdr).bound}, {"witness", nullptr}};
  }

  json window = json::array();
  for (const auto& [t, v] : r.hilbert.window) window.push_back({{"t", t}, {"dim", v}});

  json freeness = nullptr;
  if (r.freeness) {
    freeness = to_json(*r.freeness);
    freeness["bound_holds"] = opt(r.bound.holds);
    freeness["bound_note"] = r.bound.note;
  }

  json local = json::array();
  for (const auto& lp : r.local_points)
    local.push_back({{"point", point(lp.point)}, {"mu", lp.milnor}, {"tau", lp.tjurina}});

  json weak = nullptr;
  if (r.weak_type) {
    const auto& w = *r.weak_type;
    weak = {{"k", w.k}, {"n2", w.n2}, {"n3", w.n3}, {"t3", w.t3}, {"t5", w.t5}, {"t7", w.t7}};
  }
  json inventory = nullptr;
  if (const auto inv = r.inventory()) inventory = *inv;
  json ss = nullptr;
  if (r.supersolvable)
    ss = {{"mode", r.supersolvable->mode},
          {"evaluated", r.supersolvable->evaluated},
          {"modular_point", opt(r.supersolvable->modular_point)},
          {"note", r.supersolvable->note}};

  return {{"schema", kReportSchema},
          {"input",
           {{"label", r.label},
            {"polynomial", r.f.to_string()},
            {"degree", r.degree},
            {"components", components}}},
          {"mdr", mdr_block},
          {"tjurina", {{"window", window}, {"stabilized", opt(r.tau())}, {"smooth", r.hilbert.smooth}}},
          {"freeness", freeness},
          {"survey", r.survey ? to_json(*r.survey) : json(nullptr)},
          {"local_points", local},
          {"checks",
           {{"inventory", inventory},
            {"weak_type", weak},
            {"count_ok", opt(r.count_ok)},
            {"local_tau_sum", opt(r.local_tau_sum)},
            {"local_matches_global", opt(r.local_matches_global)},
            {"supersolvable", ss}}},
          {"corpus", r.label.rfind("corpus:", 0) == 0 ? to_json(corpus_lookup(r.label.substr(7))) : json(nullptr)},
          {"notes", r.notes}};
}

json to_json(const EnumerationCertificate& c) {
  json ces = json::array();
  for (const auto& x : c.counterexamples) ces.push_back({{"k", x.k}, {"n2", x.n2}, {"n3", x.n3}, {"d1", x.d1}});
  json intervals = json::array();
  for (const auto& iv : c.intervals)
    intervals.push_back({{"k", iv.k}, {"lo", iv.lo}, {"hi", iv.hi}, {"empty", iv.empty()}});
  json out = {{"schema", kReportSchema},
              {"theorem", c.theorem},
              {"k_range", {c.kmin, c.kmax}},
              {"candidates", c.candidates},
              {"counterexamples", ces},
              {"passed", c.passed()}};
  if (!c.intervals.empty()) {
    out["intervals"] = intervals;
    out["admissible"] = c.admissible;
    out["expected_admissible"] = c.expected_admissible;
  }
  return out;
}

json to_json(const DeformationVerdict& v) {
  json clauses = json::array();
  for (const auto& c : v.hypotheses) clauses.push_back({{"clause", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"schema", kReportSchema},
          {"hypotheses", clauses},
          {"hypotheses_hold", v.hypotheses_hold},
          {"failed", v.failed()},
          {"after_verdict", v.after.to_string()},
          {"conclusion_confirmed", v.conclusion_confirmed}};
}

json to_json(const std::vector<RegressionRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json diffs = json::array();
    for (const auto& d : row.diffs) diffs.push_back({{"field", d.field}, {"expected", d.expected}, {"actual", d.actual}});
    out.push_back({{"name", row.name}, {"passed", row.passed}, {"diffs", diffs}, {"error", opt(row.error)}});
  }
  return {{"schema", kReportSchema}, {"regression", out}};
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string yes_no(std::optional<bool> b) { return b ? (*b ? "yes" : "no") : "n/a"; }

}  // namespace

std::string render_text(const LocusSurvey& s) {
  std::ostringstream out;
  out << "singular points: " << s.records.size() << " located\n";
  for (const auto& r : s.records) {
    out << "  " << to_string(r.point) << "  " << r.type.to_string() << "  components";
    for (const auto m : r.members) out << ' ' << m;
    out << "  mu=" << r.mu << " tau=" << (r.tau ? std::to_string(*r.tau) : "?");
    if (r.tau_algebra) out << " (local algebra: mu=" << *r.mu_algebra << " tau=" << *r.tau_algebra << ")";
    out << '\n';
  }
  for (const auto& [pair, n] : s.residual_per_pair)
    if (n) out << "  pair " << pair.first << "," << pair.second << ": " << n << " intersections not over Q\n";
  if (s.unlocated_nodes) {
    if (*s.unlocated_nodes) out << "  unlocated intersections certified as " << *s.unlocated_nodes << " nodes\n";
  } else if (!s.complete) {
    out << "  warning: survey incomplete\n";
  }
  if (const auto t = s.tau_sum()) out << "  sum of local tau: " << *t << '\n';
  for (const auto& n : s.notes) out << "  note: " << n << '\n';
  return out.str();
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "curve: " << r.label << "\n  f = " << r.f.to_string() << "\n  degree " << r.degree;
  if (!r.components.empty()) out << ", " << r.components.size() << " components";
  out << '\n';
  if (const auto* w = std::get_if<SyzygyWitness>(&r.mdr)) {
    out << "mdr: d1 = " << w->r << "  witness (" << w->triple[0].to_string() << ", " << w->triple[1].to_string()
        << ", " << w->triple[2].to_string() << ")" << (r.witness_verified ? " verified" : " NOT verified") << '\n';
  } else {
    out << "mdr: d1 >= " << std::get<AtLeast>(r.mdr).bound << '\n';
  }
  out << "tjurina window:";
  for (const auto& [t, v] : r.hilbert.window) out << ' ' << t << ':' << v;
  out << "\n  tau = " << (r.tau() ? std::to_string(*r.tau()) : "unstable") << '\n';
  if (r.freeness) {
    const auto& f = *r.freeness;
    out << "freeness: " << f.verdict.to_string();
    if (f.eta) out << "  eta=" << *f.eta << " nu=" << *f.nu;
    out << '\n';
    if (f.arnold_exponent)
      out << "  arnold exponent " << to_string(*f.arnold_exponent) << ", mdr >= " << to_string(*f.mdr_lower_bound)
          << " (" << (r.bound.holds ? (*r.bound.holds ? "holds" : "VIOLATED") : "d1 unknown") << ")\n";
    for (const auto& n : f.notes) out << "  note: " << n << '\n';
  }
  if (r.survey) out << render_text(*r.survey);
  for (const auto& lp : r.local_points)
    out << "  local " << to_string(lp.point) << ": mu=" << lp.milnor << " tau=" << lp.tjurina << '\n';
  out << "checks:\n";
  if (r.weak_type) out << "  weak type " << to_string(*r.weak_type) << ", count " << yes_no(r.count_ok) << '\n';
  if (r.local_tau_sum)
    out << "  local tau sum " << *r.local_tau_sum << ", matches global: " << yes_no(r.local_matches_global) << '\n';
  if (r.supersolvable) {
    const auto& s = *r.supersolvable;
    out << "  supersolvable (" << s.mode << "): ";
    if (!s.evaluated)
      out << "not evaluated, " << s.note;
    else if (s.modular_point)
      out << "yes, modular point " << *s.modular_point;
    else
      out << "no";
    out << '\n';
  }
  for (const auto& n : r.notes) out << "note: " << n << '\n';
  return out.str();
}

std::string render_text(const EnumerationCertificate& c) {
  std::ostringstream out;
  out << "theorem " << c.theorem << ", k in [" << c.kmin << ", " << c.kmax << "]: " << c.candidates
      << " candidates, " << c.counterexamples.size() << " counterexamples\n";
  for (const auto& x : c.counterexamples)
    out << "  counterexample k=" << x.k << " n2=" << x.n2 << " n3=" << x.n3 << " d1=" << x.d1 << '\n';
  if (!c.intervals.empty()) {
    for (const auto& iv : c.intervals)
      if (iv.k <= 10 || !iv.empty())
        out << "  k=" << iv.k << ": [" << iv.lo << ", " << iv.hi << "]" << (iv.empty() ? " empty" : "") << '\n';
    out << "  admissible {";
    for (std::size_t i = 0; i < c.admissible.size(); ++i) out << (i ? "," : "") << c.admissible[i];
    out << "}\n";
  }
  out << (c.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string render_text(const DeformationVerdict& v) {
  std::ostringstream out;
  for (const auto& c : v.hypotheses)
    out << "  " << (c.passed ? "ok  " : "FAIL") << ' ' << c.name << ": " << c.detail << '\n';
  out << "deformed curve: " << v.after.to_string() << '\n';
  if (v.hypotheses_hold)
    out << (v.conclusion_confirmed ? "hypotheses hold; nearly free as predicted\n"
                                   : "hypotheses hold but the deformed curve is NOT nearly free\n");
  else
    out << "hypotheses fail\n";
  return out.str();
}

std::string render_text(const std::vector<RegressionRow>& rows) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& row : rows) {
    out << (row.passed ? "pass " : "FAIL ") << row.name << '\n';
    if (row.error) out << "    error: " << *row.error << '\n';
    for (const auto& d : row.diffs)
      out << "    " << d.field << ": expected " << d.expected << ", got " << d.actual << '\n';
    failed += !row.passed;
  }
  out << rows.size() - failed << "/" << rows.size() << " passed\n";
  return out.str();
}

}  // namespace freecurve
