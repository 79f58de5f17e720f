#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lyutab/lyubeznik.hpp"

namespace lyutab {

namespace {

using Json = nlohmann::ordered_json;

CheckOutcome verdict(bool applicable, bool holds) {
  if (!applicable) return CheckOutcome::kNotApplicable;
  return holds ? CheckOutcome::kPass : CheckOutcome::kFail;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json profile_json(int i, const ModuleProfile& p) {
  Json j;
  j["i"] = i;
  j["zero"] = p.is_zero;
  j["dim"] = p.dim ? Json(*p.dim) : Json(nullptr);
  j["depth"] = p.depth ? Json(*p.depth) : Json(nullptr);
  j["cm"] = p.is_cm;
  return j;
}

}  // namespace

std::string to_string(CheckOutcome outcome) {
  switch (outcome) {
    case CheckOutcome::kPass:
      return "pass";
    case CheckOutcome::kNotApplicable:
      return "n/a";
    case CheckOutcome::kFail:
      return "fail";
  }
  return "?";
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "table_properties",              // λ vanishes off the triangle, λ_{d,d} >= 1
      "seq_cm_implies_trivial",        // (a)
      "euler_characteristic",          // (b)
      "ccm_top_column_vanishes",       // (c)
      "unmixed_superdiagonal_shape",   // (d)
      "cm_implies_trivial",            // (e)
      "highest_equals_hh_components",  // (f)
      "seq_cm_oracles_agree",          // (g)
  };
  return names;
}

bool VerificationReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.outcome == CheckOutcome::kFail; });
}

const NamedCheck* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport build_report(const RingAnalysis& a) {
  VerificationReport r;
  r.field = a.field;
  r.ideal = a.ideal;
  r.table = a.table;

  Classification& c = r.classification;
  const int d = a.d;
  c.d = d;
  c.depth = a.ring_profile.depth.value_or(0);
  c.is_cm = a.ring_profile.is_cm;
  c.is_seq_cm_hom = is_seq_cm_homological(a);
  c.is_seq_cm_duval = is_seq_cm_duval(a.complex, a.field);
  c.is_ccm = is_ccm(a);
  c.is_unmixed = a.complex.is_pure();
  c.deficiency_profiles = a.deficiency;
  for (int j = 0; j <= a.n; ++j) {
    if (std::any_of(a.ext_dims[j].begin(), a.ext_dims[j].end(), [](std::size_t v) { return v > 0; })) {
      c.lc_nonvanishing.insert(j);
    }
  }
  c.hh_components = hochster_huneke_components(a.complex);

  const auto& t = a.table;
  const std::uint64_t top = t.at(d, d);
  auto add = [&r](std::string name, CheckOutcome outcome, std::string detail = {}) {
    r.checks.push_back({std::move(name), outcome, std::move(detail)});
  };

  {
    std::string detail;
    for (auto [p, i] : a.off_triangle) detail += "λ_{" + std::to_string(p) + "," + std::to_string(i) + "}≠0 ";
    if (top < 1) detail += "λ_{d,d}=0";
    add("table_properties", verdict(true, a.off_triangle.empty() && top >= 1), detail);
  }
  {
    const bool seq_cm = c.is_seq_cm_hom || c.is_seq_cm_duval;
    add("seq_cm_implies_trivial", verdict(seq_cm, t.is_trivial()));
  }
  {
    const long long chi = t.euler_characteristic();
    add("euler_characteristic", verdict(true, chi == 1), "sum = " + std::to_string(chi));
  }
  {
    bool holds = true;
    for (int p = 0; p < d; ++p) holds = holds && t.at(p, d) == 0;
    add("ccm_top_column_vanishes", verdict(c.is_ccm, holds));
  }
  {
    bool hypothesis = c.is_unmixed;
    for (int i = 0; i < d && hypothesis; ++i) {
      const auto& p = a.deficiency[i];
      hypothesis = p.is_zero || *p.depth >= i - 1;
    }
    bool shape = true;
    std::uint64_t superdiagonal = 0;
    for (int i = 0; i <= d; ++i) {
      for (int p = 0; p <= i; ++p) {
        const bool allowed = (p == i - 1 && i >= 1 && i <= d - 1) || (p == d && i == d);
        if (!allowed && t.at(p, i) != 0) shape = false;
        if (p == i - 1 && i >= 1 && i <= d - 1) superdiagonal += t.at(p, i);
      }
    }
    const bool sum_ok = top >= 1 && superdiagonal == top - 1;
    add("unmixed_superdiagonal_shape", verdict(hypothesis, shape && sum_ok),
        "superdiagonal sum = " + std::to_string(superdiagonal) + ", λ_{d,d} = " + std::to_string(top));
  }
  add("cm_implies_trivial", verdict(c.is_cm, top == 1 && t.is_trivial()));
  add("highest_equals_hh_components", verdict(true, top == static_cast<std::uint64_t>(c.hh_components)),
      "λ_{d,d} = " + std::to_string(top) + ", components = " + std::to_string(c.hh_components));
  add("seq_cm_oracles_agree", verdict(true, c.is_seq_cm_hom == c.is_seq_cm_duval));
  return r;
}

ImplicationFailure::ImplicationFailure(VerificationReport report)
    : std::runtime_error([&report] {
        std::string msg = "implication check failed for " + canonical_json(report.ideal) + ":";
        for (const auto& c : report.checks) {
          if (c.outcome == CheckOutcome::kFail) msg += " " + c.name;
        }
        return msg;
      }()),
      report_(std::move(report)) {}

VerificationReport classify_and_verify(const SquarefreeIdeal& ideal, const FieldSpec& field, ResolutionCache* cache) {
  auto report = build_report(analyze(ideal, field, cache));
  if (!report.all_passed()) throw ImplicationFailure(std::move(report));
  return report;
}

std::string report_json(const VerificationReport& r, int indent) {
  const auto& c = r.classification;
  Json j;
  j["ideal"] = Json::parse(canonical_json(r.ideal));
  j["field"] = Json{{"characteristic", r.field.characteristic}};
  j["d"] = c.d;
  j["table"] = r.table.rows();
  j["trivial"] = r.table.is_trivial();
  Json cls;
  cls["dim"] = c.d;
  cls["depth"] = c.depth;
  cls["cohen_macaulay"] = c.is_cm;
  cls["seq_cm_homological"] = c.is_seq_cm_hom;
  cls["seq_cm_duval"] = c.is_seq_cm_duval;
  cls["canonically_cm"] = c.is_ccm;
  cls["unmixed"] = c.is_unmixed;
  cls["hh_components"] = c.hh_components;
  cls["lc_nonvanishing"] = std::vector<int>(c.lc_nonvanishing.begin(), c.lc_nonvanishing.end());
  Json profiles = Json::array();
  for (std::size_t i = 0; i < c.deficiency_profiles.size(); ++i) {
    profiles.push_back(profile_json(static_cast<int>(i), c.deficiency_profiles[i]));
  }
  cls["deficiency"] = profiles;
  j["classification"] = cls;
  Json checks;
  Json details;
  for (const auto& chk : r.checks) {
    checks[chk.name] = to_string(chk.outcome);
    if (chk.outcome == CheckOutcome::kFail) details[chk.name] = chk.detail;
  }
  j["checks"] = checks;
  if (!details.empty()) j["failures"] = details;
  j["assumptions"] = Json::array(
      {"Hochster-Huneke graph built on the monomial minimal primes (no strict Henselization step)"});
  return j.dump(indent);
}

std::string report_text(const VerificationReport& r) {
  const auto& c = r.classification;
  std::ostringstream os;
  os << "ideal: " << canonical_json(r.ideal) << '\n';
  os << "characteristic: " << r.field.characteristic << '\n';
  os << "d = " << c.d << '\n';
  os << "Lyubeznik table:\n" << r.table.render();
  os << "trivial: " << yes_no(r.table.is_trivial()) << '\n';
  os << "depth: " << c.depth << '\n';
  os << "cohen-macaulay: " << yes_no(c.is_cm) << '\n';
  os << "sequentially cohen-macaulay: " << yes_no(c.is_seq_cm_hom) << " (homological), " << yes_no(c.is_seq_cm_duval)
     << " (Duval)\n";
  os << "canonically cohen-macaulay: " << yes_no(c.is_ccm) << '\n';
  os << "unmixed: " << yes_no(c.is_unmixed) << '\n';
  os << "hochster-huneke components: " << c.hh_components << '\n';
  os << "local cohomology nonvanishing at r =";
  for (int r_ : c.lc_nonvanishing) os << ' ' << r_;
  os << '\n';
  os << "deficiency modules:\n";
  for (std::size_t i = 0; i < c.deficiency_profiles.size(); ++i) {
    const auto& p = c.deficiency_profiles[i];
    os << "  K^" << i << ": ";
    if (p.is_zero) {
      os << "zero\n";
    } else {
      os << "dim " << *p.dim << ", depth " << *p.depth << (p.is_cm ? ", CM" : ", not CM") << '\n';
    }
  }
  os << "checks:\n";
  std::size_t width = 0;
  for (const auto& chk : r.checks) width = std::max(width, chk.name.size());
  for (const auto& chk : r.checks) {
    os << "  " << chk.name << std::string(width - chk.name.size() + 2, ' ') << to_string(chk.outcome);
    if (chk.outcome == CheckOutcome::kFail && !chk.detail.empty()) os << "  (" << chk.detail << ')';
    os << '\n';
  }
  return os.str();
}

}  // namespace lyutab
