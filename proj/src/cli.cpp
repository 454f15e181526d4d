#include "apnforge/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "apnforge/apn.hpp"
#include "apnforge/errors.hpp"
#include "apnforge/exponent.hpp"
#include "apnforge/families.hpp"
#include "apnforge/lemmas.hpp"
#include "apnforge/zero_apn.hpp"

namespace apnforge {

using json = nlohmann::ordered_json;

Range parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) {
      throw DomainError("bad range '" + text + "' (expected a or a:b)");
    }
    return std::stol(s);
  };
  const auto colon = text.find(':');
  Range r;
  if (colon == std::string::npos) {
    r.lo = r.hi = number(text);
  } else {
    r.lo = number(text.substr(0, colon));
    r.hi = number(text.substr(colon + 1));
  }
  if (r.lo > r.hi) throw DomainError("empty range '" + text + "'");
  return r;
}

namespace {

unsigned default_workers() {
  const char* env = std::getenv("APNFORGE_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0 || v > 1024) throw DomainError(std::string("bad APNFORGE_WORKERS '") + env + "'");
  return static_cast<unsigned>(v);
}

// Write to a sibling temp file, then rename over the target.
void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp + " for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("write to " + tmp + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

struct ExponentArgs {
  std::string d;
  unsigned long l = 0, k = 0;

  void add_to(CLI::App* sub) {
    sub->add_option("--d", d, "Exponent as a decimal integer");
    sub->add_option("--l", l, "Number of terms of e(l,k)");
    sub->add_option("--k,--i", k, "Stride of e(l,k)");
  }

  bool is_elk() const { return d.empty(); }

  BigNat value() const {
    if (!d.empty()) {
      if (l != 0 || k != 0) throw DomainError("give either --d or --l/--k, not both");
      return parse_bignat(d);
    }
    if (l == 0 || k == 0) throw DomainError("need --d, or both --l and --k");
    return e_lk(l, k);
  }
};

std::string join(const std::vector<unsigned long>& v) {
  std::string s;
  for (unsigned long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

int cmd_gen_dims(unsigned long l, unsigned long k, unsigned long n_min, unsigned long n_max, const std::string& cond,
                 const ScanOptions& options, const std::string& out_path, const std::string& format,
                 std::ostream& out) {
  if (l < 2 || k < 1) throw DomainError("gen-dims needs --l >= 2 and --k >= 1");
  if (n_min < 1) throw DomainError("--n-min must be >= 1");
  const DimCondition c = cond == "theorem"   ? DimCondition::Theorem
                         : cond == "cascade" ? DimCondition::Cascade
                         : cond == "exact"   ? DimCondition::Exact
                                             : DimCondition::TheoremRelaxed;
  std::vector<unsigned long> dims;
  if (n_min <= n_max) dims = generate_dims(l, k, n_min, n_max, c, options);
  if (format == "json") {
    json j;
    j["l"] = l;
    j["k"] = k;
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    j["condition"] = cond;
    j["count"] = dims.size();
    j["dimensions"] = dims;
    emit(out, out_path, j.dump(2) + "\n");
    if (!out_path.empty()) out << "count " << dims.size() << "\n";
    return kExitOk;
  }
  if (out_path.empty()) {
    out << "dims " << join(dims) << "\n";
  } else {
    std::string lines;
    for (unsigned long n : dims) lines += std::to_string(n) + "\n";
    write_file(out_path, lines);
  }
  out << "count " << dims.size() << "\n";
  return kExitOk;
}

int cmd_check_zero_apn(const ExponentArgs& ex, const Range& n_range, const ScanOptions& options,
                       const std::string& format, std::ostream& out) {
  const BigNat d = ex.value();
  json rows = json::array();
  for (long n = n_range.lo; n <= n_range.hi; ++n) {
    if (n < 1) throw DomainError("n must be >= 1");
    const ZeroApnVerdict v = is_zero_apn_exact(d, Field::create(static_cast<int>(n)), options);
    json row;
    row["n"] = n;
    row["exponent"] = to_decimal(v.exponent);
    row["zero_apn"] = v.is_zero_apn;
    row["nontrivial_roots"] = v.nontrivial_root_count;
    row["method"] = std::string(to_string(v.method));
    if (ex.is_elk() && ex.l >= 2) {
      row["theorem"] = thm_sufficient(ex.l, ex.k, static_cast<unsigned long>(n));
      row["cascade"] = cascade_sufficient(ex.l, ex.k, static_cast<unsigned long>(n));
    }
    if (format == "json") {
      rows.push_back(row);
      continue;
    }
    out << "n=" << n << " d=" << to_decimal(v.exponent) << " zero_apn=" << (v.is_zero_apn ? "true" : "false")
        << " nontrivial_roots=" << v.nontrivial_root_count << " method=" << to_string(v.method);
    if (row.contains("theorem")) {
      out << " theorem=" << (row["theorem"].get<bool>() ? "true" : "false")
          << " cascade=" << (row["cascade"].get<bool>() ? "true" : "false");
    }
    out << "\n";
  }
  if (format == "json") out << rows.dump(2) << "\n";
  return kExitOk;
}

int cmd_check_apn(const ExponentArgs& ex, const Range& n_range, const ScanOptions& options, const std::string& format,
                  std::ostream& out) {
  const BigNat d = ex.value();
  json rows = json::array();
  for (long n = n_range.lo; n <= n_range.hi; ++n) {
    if (n < 1) throw DomainError("n must be >= 1");
    const DiffSpectrum s = diff_spectrum_monomial(d, Field::create(static_cast<int>(n)), options);
    if (format == "json") {
      json row;
      row["n"] = n;
      row["exponent"] = to_decimal(s.d);
      row["uniformity"] = s.uniformity;
      row["apn"] = s.uniformity == 2;
      json hist = json::object();
      for (const auto& [count, mult] : s.histogram) hist[std::to_string(count)] = mult;
      row["spectrum"] = hist;
      rows.push_back(row);
      continue;
    }
    out << "n=" << n << " d=" << to_decimal(s.d) << " uniformity=" << s.uniformity
        << " apn=" << (s.uniformity == 2 ? "true" : "false") << " spectrum=";
    bool first = true;
    for (const auto& [count, mult] : s.histogram) {
      out << (first ? "" : ",") << count << ":" << mult;
      first = false;
    }
    out << "\n";
  }
  if (format == "json") out << rows.dump(2) << "\n";
  return kExitOk;
}

json witness_json(const EquivalenceWitness& w) {
  json j;
  j["kind"] = std::string(to_string(w.kind));
  j["a"] = w.a;
  j["details"] = w.details;
  return j;
}

int cmd_classify(const std::string& d_text, int n, std::ostream& out) {
  if (n < 1) throw DomainError("n must be >= 1");
  const BigNat d = parse_bignat(d_text);
  if (d < 1) throw DomainError("d must be >= 1");
  const ReducedExponent r = reduce_mod_mersenne(d, n);
  json j;
  j["d"] = d_text;
  j["n"] = n;
  j["reduced"] = to_decimal(r.value());
  j["coset_min"] = to_decimal(coset_min(d, n));
  j["weight"] = weight(r);
  json matches = json::array();
  for (const FamilyMatch& m : classify(d, n)) {
    json mj;
    mj["family"] = std::string(to_string(m.instance.family));
    mj["tag"] = m.instance.tag();
    mj["param"] = m.instance.param;
    mj["exponent"] = to_decimal(m.instance.exponent);
    mj["witness"] = witness_json(m.witness);
    matches.push_back(mj);
  }
  j["matches"] = matches;
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_scan(ScanConfig config, const std::string& out_path, const std::string& format,
             const std::string& checkpoint_path, std::ostream& out, std::ostream& err) {
  if (config.l.lo < 1 || config.k.lo < 1 || config.n.lo < 1) throw DomainError("scan ranges must start at >= 1");
  std::unique_ptr<Checkpoint> checkpoint;
  if (!checkpoint_path.empty()) {
    checkpoint = std::make_unique<Checkpoint>(checkpoint_path);
    if (!checkpoint->done().empty()) err << "resuming: " << checkpoint->done().size() << " cells in checkpoint\n";
  }
  const auto records = scan_table(config, checkpoint.get(), [&](const ScanRecord& r, double ms) {
    err << "cell l=" << r.l << " k=" << r.k << " n=" << r.n << " method=" << r.method
        << " apn=" << (r.apn ? (*r.apn ? "true" : "false") : "null") << " wall_ms=" << static_cast<long>(ms) << "\n";
  });
  for (const ScanRecord& r : records) {
    if (r.apn.value_or(false) && !r.zero_apn.value_or(false)) {
      err << "warning: l=" << r.l << " k=" << r.k << " n=" << r.n << " is APN but not 0-APN\n";
    }
    if (r.apn.value_or(false) && r.families.empty()) {
      err << "warning: l=" << r.l << " k=" << r.k << " n=" << r.n << " is APN with no known family match\n";
    }
  }
  std::string content;
  if (format == "json") {
    content = to_json_text(records);
  } else {
    std::ostringstream s;
    write_csv(s, records);
    content = s.str();
  }
  emit(out, out_path, content);
  std::ostream& summary = out_path.empty() ? err : out;
  for (const std::string& line : table_summary(records)) summary << line << "\n";
  return kExitOk;
}

// verify ---------------------------------------------------------------------

json coincidence_json(const Coincidence& c) {
  json j;
  j["n"] = c.n;
  j["param"] = c.param;
  j["inverse"] = c.inverse;
  j["l"] = c.witness.l;
  j["k"] = c.witness.k;
  j["a"] = c.witness.a;
  j["elk_residue"] = to_decimal(c.elk_residue);
  return j;
}

json claims_json(const std::vector<ClaimCheck>& claims) {
  json arr = json::array();
  for (const ClaimCheck& c : claims) arr.push_back({{"claim", c.claim}, {"holds", c.holds}, {"observed", c.observed}});
  return arr;
}

void print_claims(std::ostream& out, const std::vector<ClaimCheck>& claims) {
  for (const ClaimCheck& c : claims) out << "  " << (c.holds ? "PASS " : "FAIL ") << c.claim << ": " << c.observed << "\n";
}

json run_theorem(TheoremId id, int lo, int hi, unsigned workers, std::ostream& out) {
  const TheoremReport r = theorem_scan(id, lo, hi, workers);
  out << "[" << to_string(id) << "] n=" << lo << ".." << hi << ": " << r.coincidences.size() << " coincidences, "
      << r.unexpected.size() << " outside the asserted exceptions\n";
  for (const Coincidence& c : r.unexpected) {
    out << "  UNEXPECTED n=" << c.n << " param=" << c.param << (c.inverse ? " inverse" : " direct")
        << " (n,l,k,a)=(" << c.n << "," << c.witness.l << "," << c.witness.k << "," << c.witness.a << ")\n";
  }
  print_claims(out, r.claims);
  json j;
  j["suite"] = std::string(to_string(id));
  j["n_lo"] = lo;
  j["n_hi"] = hi;
  j["ok"] = r.ok();
  j["claims"] = claims_json(r.claims);
  json all = json::array(), bad = json::array();
  for (const Coincidence& c : r.coincidences) all.push_back(coincidence_json(c));
  for (const Coincidence& c : r.unexpected) bad.push_back(coincidence_json(c));
  j["coincidences"] = all;
  j["unexpected"] = bad;
  return j;
}

json run_dobbertin_inverse(int n_max, unsigned workers, std::ostream& out) {
  const auto entries = dobbertin_inverse_scan(n_max, workers);
  std::set<int> with_witness;
  json rows = json::array();
  for (const DobbertinInverseEntry& e : entries) {
    if (!e.witnesses.empty()) with_witness.insert(e.n);
    json ws = json::array();
    for (const ElkWitness& w : e.witnesses) ws.push_back({{"l", w.l}, {"k", w.k}, {"a", w.a}});
    rows.push_back({{"n", e.n}, {"t", e.t}, {"invertible", e.invertible}, {"note", e.note}, {"witnesses", ws}});
  }
  std::vector<ClaimCheck> claims;
  std::string seen;
  for (int n : with_witness) seen += (seen.empty() ? "" : ",") + std::to_string(n);
  if (n_max >= 5) {
    claims.push_back({"witnesses against D_t^-1 exist only at n=5", with_witness == std::set<int>{5},
                      "n with witnesses: {" + seen + "}"});
    const DobbertinInverseEntry& five = entries.front();
    const bool has41 = std::any_of(five.witnesses.begin(), five.witnesses.end(),
                                   [](const ElkWitness& w) { return w.l == 4 && w.k == 1; });
    claims.push_back({"n=5: D_1^-1 = 15 = e(4,1)", five.note == "D_t^-1 = 15" && has41,
                      five.note + (has41 ? ", e(4,1) witness present" : ", e(4,1) witness missing")});
  }
  out << "[dobbertin-inverse] n=5.." << n_max << ": witnesses at {" << seen << "}\n";
  for (const DobbertinInverseEntry& e : entries) {
    if (!e.witnesses.empty() && e.n != 5) {
      const ElkWitness& w = e.witnesses.front();
      out << "  UNEXPECTED (n,l,k,a)=(" << e.n << "," << w.l << "," << w.k << "," << w.a << ")\n";
    }
  }
  print_claims(out, claims);
  std::string n10;
  if (n_max >= 10) {
    const DobbertinInverseEntry& ten = entries[1];
    n10 = "n=10: " + ten.note + ", " + std::to_string(ten.witnesses.size()) +
          " witnesses; consistent with 'only t=1', not with 'except n=5 and n=10'";
    if (!ten.witnesses.empty()) n10 = "n=10: " + ten.note + ", witnesses found; consistent with 'except n=5 and n=10'";
    out << "  NOTE " << n10 << "\n";
  }
  json j;
  j["suite"] = "dobbertin-inverse";
  j["n_max"] = n_max;
  j["ok"] = std::all_of(claims.begin(), claims.end(), [](const ClaimCheck& c) { return c.holds; });
  j["claims"] = claims_json(claims);
  j["n10"] = n10;
  j["entries"] = rows;
  return j;
}

json run_lemmas(std::ostream& out) {
  const auto claims = verify_lemmas();
  out << "[lemmas]\n";
  print_claims(out, claims);
  json j;
  j["suite"] = "lemmas";
  j["ok"] = std::all_of(claims.begin(), claims.end(), [](const ClaimCheck& c) { return c.holds; });
  j["claims"] = claims_json(claims);
  return j;
}

int cmd_verify(const std::string& suite, int n_max, int t_max, unsigned workers, const std::string& out_path,
               std::ostream& out) {
  if (n_max != -1 && n_max < 3) throw DomainError("--n-max must be >= 3");
  if (t_max != -1 && t_max < 1) throw DomainError("--t-max must be >= 1");
  const bool all = suite == "all";
  const int t_hi = 2 * (t_max == -1 ? 20 : t_max) + 1;
  json sections = json::array();
  if (all || suite == "lemmas") sections.push_back(run_lemmas(out));
  if (all || suite == "welch") sections.push_back(run_theorem(TheoremId::Welch, 3, t_hi, workers, out));
  if (all || suite == "kasami") {
    sections.push_back(run_theorem(TheoremId::Kasami, 3, n_max == -1 ? 40 : n_max, workers, out));
    sections.push_back(run_theorem(TheoremId::KasamiInverse, 3, n_max == -1 ? 31 : n_max, workers, out));
  }
  if (all || suite == "niho") {
    sections.push_back(run_theorem(TheoremId::NihoEven, 3, t_hi, workers, out));
    sections.push_back(run_theorem(TheoremId::NihoOdd, 3, t_hi, workers, out));
  }
  if (all || suite == "dobbertin") {
    sections.push_back(run_theorem(TheoremId::Dobbertin, 5, n_max == -1 ? 100 : n_max, workers, out));
  }
  if (all || suite == "dobbertin-inverse") {
    sections.push_back(run_dobbertin_inverse(n_max == -1 ? 100 : n_max, workers, out));
  }
  bool ok = true;
  for (const auto& s : sections) ok = ok && s["ok"].get<bool>();
  json report;
  report["suite"] = suite;
  report["ok"] = ok;
  report["sections"] = sections;
  if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
  out << (ok ? "verify: all claims match\n" : "verify: MISMATCH\n");
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    CLI::App app{"Exponent analysis for APN power functions x^e(l,k) over GF(2^n)", "apnforge"};
    app.require_subcommand(1);
    unsigned workers = default_workers();
    int scan_cap = kDefaultScanCap;
    std::string out_path, format = "text";

    auto common = [&](CLI::App* sub) {
      sub->add_option("--workers", workers, "Worker threads (default $APNFORGE_WORKERS or 1)")->check(CLI::Range(1, 1024));
      sub->add_option("--scan-cap", scan_cap, "Largest n for exhaustive kernels")->check(CLI::Range(1, 64));
    };

    // gen-dims
    unsigned long gd_l = 0, gd_k = 0, gd_n_min = 1, gd_n_max = 0;
    std::string condition = "theorem";
    auto* gen = app.add_subcommand("gen-dims", "List n where the sufficient 0-APN condition holds");
    gen->add_option("--l", gd_l)->required();
    gen->add_option("--k,--i", gd_k)->required();
    gen->add_option("--n-min", gd_n_min);
    gen->add_option("--n-max", gd_n_max)->required();
    gen->add_option("--condition", condition)->check(CLI::IsMember({"theorem", "cascade", "exact", "theorem-relaxed"}));
    gen->add_option("--out", out_path);
    gen->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    common(gen);

    // check-0apn / check-apn
    ExponentArgs z_ex, a_ex;
    std::string z_n, a_n;
    auto* z = app.add_subcommand("check-0apn", "Exact 0-APN test of x^d");
    z_ex.add_to(z);
    z->add_option("--n", z_n, "Dimension or range a:b")->required();
    z->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    common(z);
    auto* a = app.add_subcommand("check-apn", "Differential spectrum of x^d");
    a_ex.add_to(a);
    a->add_option("--n", a_n, "Dimension or range a:b")->required();
    a->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    common(a);

    // classify
    std::string c_d;
    int c_n = 0;
    auto* cls = app.add_subcommand("classify", "Known-family matches of x^d over GF(2^n)");
    cls->add_option("d", c_d)->required();
    cls->add_option("n", c_n)->required();

    // scan
    std::string s_l, s_k, s_n, checkpoint_path;
    std::optional<double> budget;
    bool record_timing = false;
    auto* sc = app.add_subcommand("scan", "Scan the (l, i, n) box");
    sc->add_option("--l", s_l)->required();
    sc->add_option("--i,--k", s_k)->required();
    sc->add_option("--n", s_n)->required();
    sc->add_option("--out", out_path);
    sc->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--checkpoint", checkpoint_path);
    sc->add_option("--cell-budget", budget, "Wall-clock seconds per cell")->check(CLI::PositiveNumber);
    sc->add_flag("--record-timing", record_timing, "Write real elapsed_ms instead of 0");
    common(sc);

    // verify
    std::string suite;
    int n_max = -1, t_max = -1;
    auto* ver = app.add_subcommand("verify", "Check the equivalence theorems and lemmas");
    ver->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"lemmas", "welch", "kasami", "niho", "dobbertin", "dobbertin-inverse", "all"}));
    ver->add_option("--n-max", n_max);
    ver->add_option("--t-max", t_max);
    ver->add_option("--out", out_path);
    ver->add_option("--workers", workers)->check(CLI::Range(1, 1024));

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitConfig;
    }

    ScanOptions options;
    options.scan_cap = scan_cap;
    options.workers = workers;
    if (gen->parsed()) {
      return cmd_gen_dims(gd_l, gd_k, gd_n_min, gd_n_max, condition, options, out_path, format, out);
    }
    if (z->parsed()) return cmd_check_zero_apn(z_ex, parse_range(z_n), options, format, out);
    if (a->parsed()) return cmd_check_apn(a_ex, parse_range(a_n), options, format, out);
    if (cls->parsed()) return cmd_classify(c_d, c_n, out);
    if (sc->parsed()) {
      if (format == "text") format = "csv";
      ScanConfig config;
      config.l = parse_range(s_l);
      config.k = parse_range(s_k);
      config.n = parse_range(s_n);
      config.scan_cap = scan_cap;
      config.workers = workers;
      config.cell_budget_s = budget;
      config.record_timing = record_timing;
      return cmd_scan(config, out_path, format, checkpoint_path, out, err);
    }
    if (ver->parsed()) return cmd_verify(suite, n_max, t_max, workers, out_path, out);
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace apnforge
