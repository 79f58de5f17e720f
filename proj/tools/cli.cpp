#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "lyutab/cache.hpp"
#include "lyutab/complex.hpp"
#include "lyutab/corpus.hpp"
#include "lyutab/errors.hpp"
#include "lyutab/lyubeznik.hpp"

namespace lyutab::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string input = "-";
  long characteristic = 0;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
  std::string cache_dir;
  bool no_cache = false;
  std::string family = "random";
  int n = 5;
  int count = 10;
  double q = 0.2;
};

/// Serializes warnings coming from cache operations on worker threads.
class WarningSink {
 public:
  explicit WarningSink(std::ostream& err) : err_(err) {}
  void operator()(const std::string& message) {
    std::lock_guard lock(mutex_);
    err_ << "warning: " << message << '\n';
  }

 private:
  std::ostream& err_;
  std::mutex mutex_;
};

std::string read_input(const std::string& source, std::istream& in) {
  if (source == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return source;
  std::ifstream file(source, std::ios::binary);
  if (!file) throw ParseError("cannot open input file " + source);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

std::unique_ptr<ResolutionCache> open_cache(const RunConfig& cfg, WarningSink& sink) {
  if (cfg.no_cache || cfg.cache_dir.empty()) return nullptr;
  return std::make_unique<ResolutionCache>(cfg.cache_dir, [&sink](const std::string& m) { sink(m); });
}

FieldSpec field_of(const RunConfig& cfg) {
  if (cfg.characteristic == 0) return FieldSpec::rationals();
  try {
    return FieldSpec::prime(cfg.characteristic);
  } catch (const DomainError& e) {
    throw ParseError(std::string("--char: ") + e.what());
  }
}

int cmd_table(const RunConfig& cfg, std::istream& in, std::ostream& out, WarningSink& sink) {
  const auto parsed = parse_and_canonicalize(read_input(cfg.input, in));
  const auto field = field_of(cfg);
  auto cache = open_cache(cfg, sink);
  const auto analysis = analyze(parsed.ideal, field, cache.get());
  if (!analysis.off_triangle.empty()) {
    throw InvariantError("nonzero iterated Ext outside the Lyubeznik triangle for " + canonical_json(parsed.ideal));
  }
  if (cfg.format == "json") {
    Json j;
    j["ideal"] = Json::parse(canonical_json(parsed.ideal));
    j["field"] = Json{{"characteristic", field.characteristic}};
    j["d"] = analysis.d;
    j["table"] = analysis.table.rows();
    j["trivial"] = analysis.table.is_trivial();
    out << j.dump(2) << '\n';
  } else {
    out << analysis.table.render();
  }
  return kOk;
}

int cmd_classify(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err, WarningSink& sink) {
  const auto parsed = parse_and_canonicalize(read_input(cfg.input, in));
  const auto field = field_of(cfg);
  auto cache = open_cache(cfg, sink);
  const auto report = build_report(analyze(parsed.ideal, field, cache.get()));
  out << (cfg.format == "json" ? report_json(report) + "\n" : report_text(report));
  if (!report.all_passed()) {
    err << "implication failure; reproduce with: lyutab classify '" << canonical_json(parsed.ideal) << "' --char "
        << field.characteristic << '\n';
    return kImplicationFailure;
  }
  return kOk;
}

Json subsets_as_json(const std::vector<Subset>& subsets) {
  Json arr = Json::array();
  for (Subset s : subsets) arr.push_back(to_vertices(s));
  return arr;
}

int cmd_duals(const RunConfig& cfg, std::istream& in, std::ostream& out) {
  const auto parsed = parse_and_canonicalize(read_input(cfg.input, in));
  const auto& ideal = parsed.ideal;
  std::optional<SquarefreeIdeal> dual;
  std::vector<Subset> primes;
  if (!ideal.is_zero()) {
    dual = alexander_dual(ideal);
    primes = primary_decomposition(ideal);
  }
  if (cfg.format == "json") {
    Json j;
    j["ideal"] = Json::parse(canonical_json(ideal));
    j["complex"] = Json::parse(canonical_json(parsed.complex));
    j["primary_components"] = dual ? subsets_as_json(primes) : Json(nullptr);
    j["alexander_dual"] = dual ? Json::parse(canonical_json(*dual)) : Json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    out << "ideal: " << canonical_json(ideal) << '\n';
    out << "complex: " << canonical_json(parsed.complex) << '\n';
    if (dual) {
      out << "primary components: " << subsets_as_json(primes).dump() << '\n';
      out << "alexander dual: " << canonical_json(*dual) << '\n';
    } else {
      out << "primary components: undefined for the zero ideal\n";
      out << "alexander dual: undefined for the zero ideal\n";
    }
  }
  return kOk;
}

const std::vector<std::string>& corpus_check_names() {
  static const std::vector<std::string> names = [] {
    auto v = check_names();
    v.insert(v.end(), {"hochster_formula", "shelling_certificate", "forest_definition", "family_seq_cm"});
    return v;
  }();
  return names;
}

struct ElementResult {
  std::string ideal;
  std::vector<NamedCheck> checks;
  bool seq_cm = false;
  bool trivial = false;
  bool cm = false;
  bool ccm = false;
  bool unmixed = false;
  int error_code = kOk;
  std::string error;
};

ElementResult verify_element(const CorpusElement& element, CorpusFamily family, const FieldSpec& field,
                             ResolutionCache* cache) {
  ElementResult r;
  const auto ideal = corpus_ideal(family, element);
  r.ideal = canonical_json(ideal);
  try {
    const auto analysis = analyze(ideal, field, cache);
    const auto report = build_report(analysis);
    r.checks = report.checks;
    const auto& c = report.classification;
    r.seq_cm = c.is_seq_cm_hom && c.is_seq_cm_duval;
    r.trivial = report.table.is_trivial();
    r.cm = c.is_cm;
    r.ccm = c.is_ccm;
    r.unmixed = c.is_unmixed;

    const auto mismatches = hochster_formula_mismatches(analysis);
    r.checks.push_back({"hochster_formula", mismatches.empty() ? CheckOutcome::kPass : CheckOutcome::kFail,
                        mismatches.empty() ? "" : mismatches.front()});
    const bool shellable = family == CorpusFamily::kNonpureShellable;
    const bool forest = family == CorpusFamily::kForest;
    CheckOutcome shelling = CheckOutcome::kNotApplicable;
    if (shellable) {
      shelling = element.shelling && verify_shelling(element.complex, *element.shelling) ? CheckOutcome::kPass
                                                                                          : CheckOutcome::kFail;
    }
    r.checks.push_back({"shelling_certificate", shelling, ""});
    CheckOutcome tree = CheckOutcome::kNotApplicable;
    if (forest) tree = is_simplicial_forest(element.complex) ? CheckOutcome::kPass : CheckOutcome::kFail;
    r.checks.push_back({"forest_definition", tree, ""});
    CheckOutcome family_seq = CheckOutcome::kNotApplicable;
    if (shellable || forest) family_seq = r.seq_cm && r.trivial ? CheckOutcome::kPass : CheckOutcome::kFail;
    r.checks.push_back({"family_seq_cm", family_seq, ""});
  } catch (const ResourceError& e) {
    r.error_code = kResourceBound;
    r.error = e.what();
  } catch (const InvariantError& e) {
    r.error_code = kInvariantFailure;
    r.error = e.what();
  } catch (const std::exception& e) {
    r.error_code = kInvariantFailure;
    r.error = e.what();
  }
  return r;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), count));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) fn(k);
  };
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err, WarningSink& sink) {
  if (!cfg.seed) throw ParseError("verify requires --seed");
  CorpusSpec spec;
  try {
    spec.family = parse_corpus_family(cfg.family);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  spec.n = cfg.n;
  spec.count = cfg.count;
  spec.q = cfg.q;
  const auto field = field_of(cfg);
  const auto corpus = generate_corpus(spec, *cfg.seed);
  auto cache = open_cache(cfg, sink);

  std::vector<ElementResult> results(corpus.size());
  const unsigned jobs = cfg.jobs > 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  parallel_for(corpus.size(), jobs,
               [&](std::size_t k) { results[k] = verify_element(corpus[k], spec.family, field, cache.get()); });

  std::map<std::string, std::map<CheckOutcome, std::size_t>> tally;
  std::size_t seq_cm = 0, trivial = 0, cm = 0, ccm = 0, unmixed = 0;
  int exit_code = kOk;
  Json failures = Json::array();
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    if (r.error_code != kOk) {
      exit_code = std::max(exit_code, r.error_code);
      failures.push_back(Json{{"index", k}, {"ideal", Json::parse(r.ideal)}, {"error", r.error}});
      continue;
    }
    seq_cm += r.seq_cm;
    trivial += r.trivial;
    cm += r.cm;
    ccm += r.ccm;
    unmixed += r.unmixed;
    Json failed = Json::array();
    for (const auto& c : r.checks) {
      ++tally[c.name][c.outcome];
      if (c.outcome == CheckOutcome::kFail) failed.push_back(c.name);
    }
    if (!failed.empty()) {
      exit_code = std::max<int>(exit_code, kImplicationFailure);
      failures.push_back(Json{{"index", k}, {"ideal", Json::parse(r.ideal)}, {"failed", failed}});
    }
  }

  if (cfg.format == "json") {
    Json j;
    j["family"] = to_string(spec.family);
    j["n"] = spec.n;
    j["count"] = spec.count;
    j["seed"] = *cfg.seed;
    if (spec.family == CorpusFamily::kRandom) j["q"] = spec.q;
    j["field"] = Json{{"characteristic", field.characteristic}};
    j["summary"] = Json{{"seq_cm", seq_cm},   {"trivial", trivial}, {"cohen_macaulay", cm},
                        {"canonically_cm", ccm}, {"unmixed", unmixed}};
    Json checks;
    for (const auto& name : corpus_check_names()) {
      auto& t = tally[name];
      checks[name] = Json{{"pass", t[CheckOutcome::kPass]},
                          {"n/a", t[CheckOutcome::kNotApplicable]},
                          {"fail", t[CheckOutcome::kFail]}};
    }
    j["checks"] = checks;
    j["failures"] = failures;
    j["ok"] = exit_code == kOk;
    out << j.dump(2) << '\n';
  } else {
    out << "corpus: " << to_string(spec.family) << ", n = " << spec.n << ", count = " << spec.count
        << ", seed = " << *cfg.seed;
    if (spec.family == CorpusFamily::kRandom) out << ", q = " << spec.q;
    out << ", characteristic " << field.characteristic << '\n';
    out << "seq CM: " << seq_cm << ", trivial: " << trivial << ", CM: " << cm << ", CCM: " << ccm
        << ", unmixed: " << unmixed << '\n';
    std::size_t width = 0;
    for (const auto& name : corpus_check_names()) width = std::max(width, name.size());
    for (const auto& name : corpus_check_names()) {
      auto& t = tally[name];
      out << "  " << name << std::string(width - name.size() + 2, ' ') << "pass " << t[CheckOutcome::kPass]
          << "  n/a " << t[CheckOutcome::kNotApplicable] << "  fail " << t[CheckOutcome::kFail] << '\n';
    }
    out << (exit_code == kOk ? "all applicable checks passed\n" : "FAILURES\n");
  }
  for (const auto& f : failures) {
    err << "element " << f["index"].get<std::size_t>() << " failed: " << f["ideal"].dump();
    if (f.contains("error")) err << " (" << f["error"].get<std::string>() << ')';
    err << '\n';
  }
  return exit_code;
}

void add_common_options(CLI::App& sub, RunConfig& cfg, bool takes_file) {
  if (takes_file) sub.add_option("FILE", cfg.input, "input JSON path, '-' for stdin, or an inline document");
  sub.add_option("--char", cfg.characteristic, "field characteristic: 0 for Q or a prime p")
      ->check(CLI::NonNegativeNumber);
  sub.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  sub.add_option("--seed", cfg.seed, "RNG seed (corpus commands)");
  sub.add_option("--jobs", cfg.jobs, "worker threads (default: available cores)");
  sub.add_option("--cache", cfg.cache_dir, "resolution cache directory");
  sub.add_flag("--no-cache", cfg.no_cache, "ignore the cache directory from the environment");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& default_cache_dir) {
  RunConfig cfg;
  if (default_cache_dir) cfg.cache_dir = *default_cache_dir;

  CLI::App app{"Lyubeznik tables and classification of Stanley-Reisner rings", "lyutab"};
  app.require_subcommand(1);
  auto* table = app.add_subcommand("table", "compute the Lyubeznik table");
  auto* classify = app.add_subcommand("classify", "classification report with implication checks");
  auto* verify = app.add_subcommand("verify", "run the checks over a generated corpus");
  auto* duals = app.add_subcommand("duals", "Stanley-Reisner complex, primary components, Alexander dual");
  for (auto* sub : {table, classify, duals}) add_common_options(*sub, cfg, true);
  add_common_options(*verify, cfg, false);
  verify->add_option("--family", cfg.family, "random | nonpure-shellable | forest");
  verify->add_option("--n", cfg.n, "vertex count");
  verify->add_option("--count", cfg.count, "number of complexes");
  verify->add_option("--q", cfg.q, "face probability (random family)")->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  WarningSink sink(err);
  try {
    if (table->parsed()) return cmd_table(cfg, in, out, sink);
    if (classify->parsed()) return cmd_classify(cfg, in, out, err, sink);
    if (duals->parsed()) return cmd_duals(cfg, in, out);
    return cmd_verify(cfg, out, err, sink);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kParseError;
  } catch (const ResourceError& e) {
    err << "resource bound: " << e.what() << '\n';
    return kResourceBound;
  } catch (const std::bad_alloc&) {
    err << "resource bound: out of memory\n";
    return kResourceBound;
  } catch (const InvariantError& e) {
    err << "internal invariant failure: " << e.what() << '\n';
    return kInvariantFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantFailure;
  }
}

}  // namespace lyutab::cli
