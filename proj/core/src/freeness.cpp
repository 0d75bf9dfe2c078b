#include <freecurve/freeness.hpp>

#include <freecurve/errors.hpp>

#include <algorithm>
#include <map>

namespace freecurve {

std::optional<unsigned> exact_value(const MdrValue& d1) {
  if (const unsigned* v = std::get_if<unsigned>(&d1)) return *v;
  return std::nullopt;
}

std::string to_string(const MdrValue& d1) {
  if (const unsigned* v = std::get_if<unsigned>(&d1)) return std::to_string(*v);
  return "AtLeast(" + std::to_string(std::get<AtLeast>(d1).bound) + ")";
}

long long eta(unsigned d, unsigned d1) {
  const long long a = d1, b = static_cast<long long>(d) - 1;
  return a * a - a * b + b * b;
}

std::string Verdict::name() const {
  switch (kind) {
    case Kind::Free: return "Free";
    case Kind::NearlyFree: return "NearlyFree";
    case Kind::Neither: return "Neither";
    case Kind::Indeterminate: return "Indeterminate";
  }
  return {};
}

std::string Verdict::to_string() const {
  switch (kind) {
    case Kind::Neither: return "Neither(" + std::to_string(nu) + ")";
    case Kind::Indeterminate: return "Indeterminate(" + reason + ")";
    default: return name();
  }
}

FreenessReport build_report(unsigned d, MdrValue d1, std::size_t tau) {
  if (d < 2) throw ValidationError("freeness criteria need d >= 2");
  FreenessReport r;
  r.d = d;
  r.d1 = d1;
  r.tau = tau;
  const auto known = exact_value(d1);
  if (!known) {
    const unsigned bound = std::get<AtLeast>(d1).bound;
    r.verdict.kind = Verdict::Kind::Indeterminate;
    r.verdict.reason = "no relation of degree below " + std::to_string(bound);
    if (bound + 1 >= d)
      r.notes.push_back("the Koszul relation (f_y, -f_x, 0) has degree d-1, so mdr = " +
                        std::to_string(d - 1) + " unless f involves one variable only");
    return r;
  }
  r.eta = eta(d, *known);
  r.nu = *r.eta - static_cast<long long>(tau);
  const bool small = 2 * *known <= d - 1;
  if (*r.nu == 0 && small) {
    r.verdict.kind = Verdict::Kind::Free;
  } else if (*r.nu == 1) {
    r.verdict.kind = Verdict::Kind::NearlyFree;
    if (2 * *known > d)
      r.notes.push_back("nearly free criterion applied with d1 > d/2; review manually");
  } else {
    r.verdict.kind = Verdict::Kind::Neither;
    r.verdict.nu = *r.nu;
    if (*r.nu == 0)
      r.notes.push_back("nu = 0 but 2 d1 > d - 1, outside the range of the free criterion");
  }
  return r;
}

LctEntry lct_a(unsigned k) {
  if (k < 1) throw UnsupportedTypeError("A_k needs k >= 1");
  return {"A" + std::to_string(k), Rat(1, 2), Rat(1, k + 1)};
}

LctEntry lct_d(unsigned k) {
  if (k < 4) throw UnsupportedTypeError("D_k needs k >= 4");
  Rat w1(1, k - 1), w2(k - 2, 2 * (k - 1));
  w1.canonicalize();
  w2.canonicalize();
  return {"D" + std::to_string(k), w1, w2};
}

LctEntry lct_ordinary(unsigned r) {
  if (r < 2) throw UnsupportedTypeError("ordinary point needs multiplicity >= 2");
  return {"OrdinaryMultiple(" + std::to_string(r) + ")", Rat(1, r), Rat(1, r)};
}

LctEntry lct(const SingularityType& type, bool assume_qh) {
  using K = SingularityType::Kind;
  switch (type.kind) {
    case K::A1: return lct_a(1);
    case K::A3: return lct_a(3);
    case K::A5: return lct_a(5);
    case K::A7: return lct_a(7);
    case K::D4: return lct_d(4);
    case K::OrdinaryMultiple:
      if (type.branches >= 5 && !assume_qh)
        throw UnsupportedTypeError(type.to_string() + " needs the quasi-homogeneity assumption");
      return lct_ordinary(type.branches);
    case K::Descriptor: break;
  }
  throw UnsupportedTypeError("no lct entry for " + type.to_string());
}

Rat mdr_lower_bound(const Rat& alpha, unsigned d) {
  if (alpha <= 0 || alpha > 1) throw ValidationError("Arnold exponent must lie in (0, 1]");
  return alpha * d - 2;
}

BoundCheck check_bound_consistency(const FreenessReport& report, const LocusSurvey& survey,
                                   bool assume_qh) {
  BoundCheck out;
  if (!survey.inventory_complete()) {
    out.note = "singular inventory incomplete";
    return out;
  }
  std::optional<Rat> alpha;
  if (survey.unlocated_nodes.value_or(0) > 0) alpha = Rat(1);
  for (const auto& rec : survey.records) {
    try {
      const Rat v = lct(rec.type, assume_qh).lct();
      if (!alpha || v < *alpha) alpha = v;
    } catch (const UnsupportedTypeError& e) {
      out.note = e.what();
      return out;
    }
  }
  if (!alpha) {
    out.note = "no singular points";
    return out;
  }
  out.alpha = alpha;
  out.bound = mdr_lower_bound(*alpha, report.d);
  if (const auto d1 = exact_value(report.d1)) out.holds = Rat(*d1) >= *out.bound;
  return out;
}

std::vector<std::string> DeformationVerdict::failed() const {
  std::vector<std::string> names;
  for (const auto& c : hypotheses)
    if (!c.passed) names.push_back(c.name);
  return names;
}

namespace {

using Inventory = std::map<std::string, std::size_t>;

std::optional<Inventory> inventory(const LocusSurvey& s) {
  if (!s.inventory_complete()) return std::nullopt;
  Inventory inv;
  for (const auto& rec : s.records) ++inv[rec.type.to_string()];
  if (const std::size_t n = s.unlocated_nodes.value_or(0)) inv["A1"] += n;
  return inv;
}

std::string describe(const Inventory& inv) {
  std::string out;
  for (const auto& [name, n] : inv) {
    if (!out.empty()) out += ", ";
    out += std::to_string(n) + "x" + name;
  }
  return out.empty() ? "none" : out;
}

}  // namespace

DeformationVerdict check_deformation(const CurveData& before, const CurveData& after) {
  DeformationVerdict v;
  v.after = after.report.verdict;

  v.hypotheses.push_back({"free", before.report.verdict.kind == Verdict::Kind::Free,
                          "original verdict " + before.report.verdict.to_string()});

  ClauseStatus inv{"inventory", false, ""};
  const auto a = inventory(before.survey), b = inventory(after.survey);
  if (!a || !b) {
    inv.detail = "singular inventory incomplete";
  } else {
    const bool ade = std::all_of(before.survey.records.begin(), before.survey.records.end(),
                                 [](const auto& r) { return r.type.is_ade(); });
    Inventory expected = *a;
    const bool has_tacnode = expected.count("A3") && expected["A3"] > 0;
    if (has_tacnode) {
      if (--expected["A3"] == 0) expected.erase("A3");
      expected["A1"] += 2;
    }
    inv.passed = ade && has_tacnode && expected == *b;
    inv.detail = describe(*a) + " -> " + describe(*b);
    if (!ade) inv.detail += "; original has non-ADE points";
    if (!has_tacnode) inv.detail += "; original has no tacnode";
  }
  v.hypotheses.push_back(inv);

  const std::size_t tb = before.report.tau, ta = after.report.tau;
  v.hypotheses.push_back({"tau", ta + 1 == tb, std::to_string(tb) + " -> " + std::to_string(ta)});

  ClauseStatus eq{"eta", false, ""};
  if (before.report.eta && after.report.eta) {
    eq.passed = *before.report.eta == *after.report.eta;
    eq.detail = std::to_string(*before.report.eta) + " vs " + std::to_string(*after.report.eta);
  } else {
    eq.detail = "eta unknown (mdr not determined)";
  }
  v.hypotheses.push_back(eq);

  v.hypotheses_hold = std::all_of(v.hypotheses.begin(), v.hypotheses.end(),
                                  [](const auto& c) { return c.passed; });
  v.conclusion_confirmed = v.hypotheses_hold && v.after.kind == Verdict::Kind::NearlyFree;
  return v;
}

}  // namespace freecurve
