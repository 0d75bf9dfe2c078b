// freecurve: freeness analysis of plane curves and conic arrangements.

#include <freecurve/errors.hpp>
#include <freecurve/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace freecurve;

namespace {

enum Exit { kOk = 0, kInput = 1, kInconclusive = 2, kInternal = 3 };

struct Common {
  bool json = false;
  bool assume_qh = false;
  std::string points_file;
  std::string modular = "off";
  unsigned window_extend = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnalysisOptions analysis_options(const Common& c) {
  AnalysisOptions o;
  o.assume_qh = c.assume_qh;
  o.linalg = c.modular == "on" ? LinalgMode::Modular : LinalgMode::Exact;
  o.window_extend = c.window_extend;
  if (!c.points_file.empty()) o.extra_points = parse_points(slurp(c.points_file));
  return o;
}

void emit(const Common& c, const nlohmann::json& j, const std::string& text) {
  if (c.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

// Arrangement from any input form; throws ValidationError when the input is
// not a product of at least two smooth conics over Q.
ConicArrangement arrangement_of(const CurveInput& in) {
  if (in.components.size() < 2)
    throw ValidationError("'" + in.label + "' is not a product of conics defined over Q");
  for (std::size_t i = 0; i < in.components.size(); ++i)
    if (in.components[i].degree() != 2)
      throw ValidationError("component " + std::to_string(i) + " (" + in.components[i].to_string() +
                            ") is not a conic");
  return ConicArrangement::from_polynomials(in.components);
}

int cmd_analyze(const Common& c, const std::string& input, bool supersolvable) {
  AnalysisOptions opts = analysis_options(c);
  opts.supersolvable = supersolvable;
  const AnalysisReport r = analyze(load_input(input), opts);
  emit(c, to_json(r), render_text(r));
  return r.exit_code();
}

int cmd_classify(const Common& c, const std::string& input) {
  const CurveInput in = load_input(input);
  const ConicArrangement arr = arrangement_of(in);
  const AnalysisOptions opts = analysis_options(c);
  std::vector<ProjectivePoint> points = in.points;
  points.insert(points.end(), opts.extra_points.begin(), opts.extra_points.end());
  ClassifyOptions copts;
  copts.assume_qh = c.assume_qh || in.assume_qh;
  copts.local_algebra = true;
  const LocusSurvey s = survey(arr, points, copts);
  nlohmann::json j = to_json(s);
  j["schema"] = kReportSchema;
  j["input"] = in.label;
  emit(c, j, render_text(s));
  if (!s.complete && !c.json) std::cerr << "warning: some intersections are not defined over Q\n";
  return s.complete ? kOk : kInconclusive;
}

int cmd_theorems(const Common& c, const std::string& which, std::optional<std::size_t> kmax) {
  EnumerationCertificate cert;
  if (which == "near")
    cert = enumerate_theorem_near(kmax.value_or(30));
  else if (which == "char")
    cert = enumerate_theorem_char(kmax.value_or(20));
  else
    cert = enumerate_nearly_free_bound(kmax.value_or(20));
  emit(c, to_json(cert), render_text(cert));
  return cert.passed() ? kOk : kInconclusive;
}

int cmd_deform(const Common& c, const std::string& before, const std::string& after) {
  const AnalysisOptions opts = analysis_options(c);
  const AnalysisReport a = analyze(load_input(before), opts);
  const AnalysisReport b = analyze(load_input(after), opts);
  for (const auto* r : {&a, &b})
    if (!r->freeness || !r->survey)
      throw ValidationError("'" + r->label + "' must be a conic arrangement with stable tau");
  const DeformationVerdict v = check_deformation({*a.freeness, *a.survey}, {*b.freeness, *b.survey});
  nlohmann::json j = to_json(v);
  j["before"] = to_json(a);
  j["after"] = to_json(b);
  std::ostringstream text;
  text << "before: " << a.label << "  " << a.freeness->verdict.to_string() << "  d1=" << to_string(a.d1())
       << " tau=" << a.freeness->tau << "\nafter:  " << b.label << "  " << b.freeness->verdict.to_string()
       << "  d1=" << to_string(b.d1()) << " tau=" << b.freeness->tau << '\n'
       << render_text(v);
  emit(c, j, text.str());
  return v.conclusion_confirmed ? kOk : kInconclusive;
}

bool looks_like_incidence(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return false;
  std::istringstream in(slurp(path));
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    return line.compare(first, 5, "point") == 0 || line.compare(first, 10, "components") == 0;
  }
  return false;
}

int cmd_supersolvable(const Common& c, const std::string& input) {
  SupersolvabilityCheck check;
  nlohmann::json j = {{"schema", kReportSchema}, {"input", input}};
  std::optional<IncidenceStructure> inc;
  if (looks_like_incidence(input)) {
    inc = parse_incidence(slurp(input));
    check.mode = "user-incidence";
  } else {
    const CurveInput in = load_input(input);
    if (in.incidence) {
      inc = in.incidence;
      check.mode = "user-incidence";
    } else {
      check.mode = "geometric";
      const LocusSurvey s = survey(arrangement_of(in), in.points, {c.assume_qh || in.assume_qh, false});
      inc = incidence_from_survey(s, in.components.size());
      j["survey"] = to_json(s);
      if (!inc) check.note = "survey has intersections not located over Q";
    }
  }
  if (inc) {
    check.evaluated = true;
    check.modular_point = is_combinatorially_supersolvable(*inc);
    nlohmann::json pts = nlohmann::json::object();
    for (const auto& [id, comps] : inc->through) pts[std::to_string(id)] = comps;
    j["incidence"] = {{"components", inc->components}, {"points", pts}};
  }
  j["mode"] = check.mode;
  j["evaluated"] = check.evaluated;
  j["modular_point"] = check.modular_point ? nlohmann::json(*check.modular_point) : nlohmann::json(nullptr);
  j["note"] = check.note;
  std::ostringstream text;
  text << "mode: " << check.mode << '\n';
  if (!check.evaluated)
    text << "not evaluated: " << check.note << '\n';
  else if (check.modular_point)
    text << "combinatorially supersolvable; modular point " << *check.modular_point << '\n';
  else
    text << "not combinatorially supersolvable (no modular point)\n";
  emit(c, j, text.str());
  return check.evaluated ? kOk : kInconclusive;
}

int cmd_corpus_list(const Common& c) {
  nlohmann::json j = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& e : corpus_entries()) {
    nlohmann::json item = {{"name", e.name}, {"description", e.description}};
    text << e.name;
    if (e.parametrized()) {
      item["parameter"] = {{"name", *e.parameter_name}, {"min", e.parameter_min}, {"max", e.parameter_max}};
      text << "/<" << *e.parameter_name << "> (" << e.parameter_min << ".." << e.parameter_max << ")";
    }
    text << "  " << e.description << '\n';
    j.push_back(item);
  }
  emit(c, {{"schema", kReportSchema}, {"corpus", j}}, text.str());
  return kOk;
}

int cmd_corpus_regress(const Common& c, const std::vector<std::string>& names) {
  const auto rows = run_regression(names.empty() ? std::nullopt : std::optional(names));
  emit(c, to_json(rows), render_text(rows));
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kInconclusive;
}

void report_parse_error(const ParseError& e, const std::string& input) {
  std::cerr << "error: " << e.what() << '\n';
  // Inline expressions get a caret under the offending position.
  if (input.find('\n') == std::string::npos && input.rfind("corpus:", 0) != 0 &&
      !std::filesystem::exists(input) && e.position() <= input.size())
    std::cerr << "  " << input << "\n  " << std::string(e.position(), ' ') << "^\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Freeness of plane curves and conic arrangements"};
  app.require_subcommand(1);
  Common common;
  const auto add_common = [&common](CLI::App* sub, bool analysis) {
    sub->add_flag("--json", common.json, "Emit the JSON report");
    if (!analysis) return;
    sub->add_flag("--assume-qh", common.assume_qh, "Treat ordinary points of multiplicity >= 5 as quasi-homogeneous");
    sub->add_option("--points", common.points_file, "File of extra singular points, one (a:b:c) per line")
        ->check(CLI::ExistingFile);
    sub->add_option("--modular-linalg", common.modular, "Certified modular rank for the Hilbert window")
        ->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--window-extend", common.window_extend, "Extra Hilbert degrees beyond 3d-4");
  };

  std::string input, before, after, which;
  std::optional<std::size_t> kmax;
  bool supersolvable = false;
  std::vector<std::string> names;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full freeness analysis of a curve");
  analyze_cmd->add_option("input", input, "corpus:<name>, a file, or an expression")->required();
  analyze_cmd->add_flag("--supersolvable", supersolvable, "Also test combinatorial supersolvability");
  add_common(analyze_cmd, true);

  auto* classify_cmd = app.add_subcommand("classify", "Locate and classify singular points of a conic arrangement");
  classify_cmd->add_option("input", input, "corpus:<name>, an arrangement file, or an expression")->required();
  add_common(classify_cmd, true);

  auto* theorems_cmd = app.add_subcommand("theorems", "Exhaustive checks of the non-existence theorems");
  theorems_cmd->add_option("which", which, "near, char or nfbound")
      ->required()
      ->check(CLI::IsMember({"near", "char", "nfbound"}));
  theorems_cmd->add_option("--kmax", kmax, "Largest number of conics")
      ->check(CLI::Range(std::size_t{2}, kEnumerationLimit));
  add_common(theorems_cmd, false);

  auto* deform_cmd = app.add_subcommand("deform_check", "Check the tacnode deformation criterion");
  deform_cmd->alias("deform-check");
  deform_cmd->add_option("before", before, "Free arrangement")->required();
  deform_cmd->add_option("after", after, "Deformed arrangement")->required();
  add_common(deform_cmd, true);

  auto* ss_cmd = app.add_subcommand("supersolvable", "Combinatorial supersolvability");
  ss_cmd->add_option("input", input, "Incidence file, arrangement file, expression or corpus:<name>")->required();
  add_common(ss_cmd, true);

  auto* corpus_cmd = app.add_subcommand("corpus", "Built-in examples");
  corpus_cmd->require_subcommand(1);
  auto* list_cmd = corpus_cmd->add_subcommand("list", "List corpus entries");
  add_common(list_cmd, false);
  auto* regress_cmd = corpus_cmd->add_subcommand("regress", "Check expected values of corpus entries");
  regress_cmd->add_option("names", names, "Entries, e.g. ploski/3 (default: all)");
  add_common(regress_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(common, input, supersolvable);
    if (*classify_cmd) return cmd_classify(common, input);
    if (*theorems_cmd) return cmd_theorems(common, which, kmax);
    if (*deform_cmd) return cmd_deform(common, before, after);
    if (*ss_cmd) return cmd_supersolvable(common, input);
    if (*list_cmd) return cmd_corpus_list(common);
    if (*regress_cmd) return cmd_corpus_regress(common, names);
  } catch (const ParseError& e) {
    report_parse_error(e, input);
    return kInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const NotFoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const Error& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
