#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lyutab/complex.hpp"
#include "lyutab/field.hpp"
#include "lyutab/sqmod.hpp"

namespace lyutab {

class ResolutionCache;

/// Upper-triangular table of Lyubeznik numbers λ_{p,i}, 0 <= p <= i <= d.
/// Entries outside the triangle read as zero and cannot be set.
class LyubeznikTable {
 public:
  LyubeznikTable() = default;
  explicit LyubeznikTable(int d);

  int dimension() const { return d_; }
  std::uint64_t at(int p, int i) const;
  void set(int p, int i, std::uint64_t value);

  /// λ_{d,d} = 1 and every other entry zero.
  bool is_trivial() const;
  /// Σ (-1)^{p-i} λ_{p,i}
  long long euler_characteristic() const;

  /// Rows p = 0..d, each of length d+1 (zeros below the diagonal).
  std::vector<std::vector<std::uint64_t>> rows() const;

  /// Upper-triangular layout with λ_{0,0} .. λ_{0,d} on the first line; cells right-padded
  /// to the widest entry.
  std::string render() const;

  friend bool operator==(const LyubeznikTable&, const LyubeznikTable&) = default;

 private:
  std::size_t index(int p, int i) const { return static_cast<std::size_t>(p) * (d_ + 1) + i; }

  int d_ = 0;
  std::vector<std::uint64_t> entries_;
};

/// Everything the classification needs, computed once per (ideal, field).
struct RingAnalysis {
  FieldSpec field;
  SquarefreeIdeal ideal;
  SimplicialComplex complex;
  int n = 0;
  /// dim R/I = largest facet cardinality.
  int d = 0;
  LyubeznikTable table;
  /// Nonzero iterated-Ext values found outside 0 <= p <= i <= d (must stay empty).
  std::vector<std::pair<int, int>> off_triangle;
  /// ext_dims[j][G] = dim Ext^j(R/I, ω)_G.
  std::vector<std::vector<std::size_t>> ext_dims;
  ModuleProfile ring_profile;
  /// Profiles of K^0 .. K^d.
  std::vector<ModuleProfile> deficiency;
};

/// Runs the full engine: resolution of R/I, its Ext modules with structure, then the Ext
/// modules of each of those. With a cache, the first level is loaded or stored.
RingAnalysis analyze(const SquarefreeIdeal& ideal, const FieldSpec& field, ResolutionCache* cache = nullptr);

LyubeznikTable lyubeznik_table(const SquarefreeIdeal& ideal, const FieldSpec& field);
std::vector<ModuleProfile> deficiency_profile(const SquarefreeIdeal& ideal, const FieldSpec& field);
bool is_seq_cm_homological(const SquarefreeIdeal& ideal, const FieldSpec& field);
bool is_seq_cm_duval(const SquarefreeIdeal& ideal, const FieldSpec& field);
bool is_ccm(const SquarefreeIdeal& ideal, const FieldSpec& field);
/// {r : H^r_I(R) != 0}; throws DomainError on the zero ideal.
std::set<int> local_cohomology_nonvanishing(const SquarefreeIdeal& ideal, const FieldSpec& field);

/// Reisner: every link has vanishing reduced homology below its top dimension.
bool is_cohen_macaulay_reisner(const SimplicialComplex& complex, const FieldSpec& field);
/// Duval: every pure i-skeleton passes the Reisner test.
bool is_seq_cm_duval(const SimplicialComplex& complex, const FieldSpec& field);

bool is_seq_cm_homological(const RingAnalysis& analysis);
/// Compares every fiber of Ext^{n-i}(R/I, ω) with the reduced homology of the matching link
/// (zero off the complex). Returns one line per disagreement.
std::vector<std::string> hochster_formula_mismatches(const RingAnalysis& analysis);
bool is_ccm(const RingAnalysis& analysis);
std::set<int> local_cohomology_nonvanishing(const RingAnalysis& analysis);

struct Classification {
  int d = 0;
  /// Empty only for the zero ring, which never occurs (the unit ideal is rejected).
  int depth = 0;
  bool is_cm = false;
  bool is_seq_cm_hom = false;
  bool is_seq_cm_duval = false;
  bool is_ccm = false;
  bool is_unmixed = false;
  std::vector<ModuleProfile> deficiency_profiles;
  std::set<int> lc_nonvanishing;
  int hh_components = 0;
};

enum class CheckOutcome { kPass, kNotApplicable, kFail };
std::string to_string(CheckOutcome outcome);

struct NamedCheck {
  std::string name;
  CheckOutcome outcome;
  std::string detail;
};

struct VerificationReport {
  FieldSpec field;
  SquarefreeIdeal ideal;
  LyubeznikTable table;
  Classification classification;
  std::vector<NamedCheck> checks;

  bool all_passed() const;
  const NamedCheck* find(const std::string& name) const;
};

/// Names of the checks, in report order.
const std::vector<std::string>& check_names();

/// Assembles the classification and evaluates every implication; never throws on failure.
VerificationReport build_report(const RingAnalysis& analysis);

/// Thrown by classify_and_verify when an implication fails; carries the full report.
class ImplicationFailure : public std::runtime_error {
 public:
  explicit ImplicationFailure(VerificationReport report);
  const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

VerificationReport classify_and_verify(const SquarefreeIdeal& ideal, const FieldSpec& field,
                                       ResolutionCache* cache = nullptr);

/// JSON report: d, table, trivial, classification, checks, plus field and ideal.
std::string report_json(const VerificationReport& report, int indent = 2);
std::string report_text(const VerificationReport& report);

}  // namespace lyutab
