#include "apnforge/families.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <utility>

#include "apnforge/errors.hpp"
#include "apnforge/exponent.hpp"
#include "apnforge/parallel.hpp"

namespace apnforge {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Gold: return "Gold";
    case Family::Kasami: return "Kasami";
    case Family::Welch: return "Welch";
    case Family::NihoEven: return "NihoEven";
    case Family::NihoOdd: return "NihoOdd";
    case Family::Inverse: return "Inverse";
    case Family::Dobbertin: return "Dobbertin";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view param_name(Family f) {
  switch (f) {
    case Family::Gold:
    case Family::Kasami:
    case Family::Dobbertin: return "i";
    default: return "t";
  }
}

std::string_view to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Shift: return "shift";
    case WitnessKind::InverseShift: return "inverse-shift";
    case WitnessKind::None: return "none";
  }
  return "?";
}

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::Welch: return "welch";
    case TheoremId::Kasami: return "kasami";
    case TheoremId::KasamiInverse: return "kasami-inverse";
    case TheoremId::NihoEven: return "niho-even";
    case TheoremId::NihoOdd: return "niho-odd";
    case TheoremId::Dobbertin: return "dobbertin";
  }
  return "?";
}

std::string FamilyInstance::tag() const {
  return std::string(to_string(family)) + "(" + std::string(param_name(family)) + "=" + std::to_string(param) + ")";
}

FamilyInstance family_exponent(Family family, unsigned long param, int n) {
  if (param < 1) throw DomainError("family parameter must be >= 1");
  if (n < 1) throw DomainError("n must be >= 1");
  const unsigned long un = static_cast<unsigned long>(n);
  const unsigned long p = param;
  FamilyInstance inst;
  inst.family = family;
  inst.param = p;
  inst.n = n;
  switch (family) {
    case Family::Gold:
      inst.exponent = pow2(p) + 1;
      inst.valid = std::gcd(p, un) == 1;
      inst.expected_degree = 2;
      break;
    case Family::Kasami:
      inst.exponent = pow2(2 * p) - pow2(p) + 1;
      inst.valid = std::gcd(p, un) == 1;
      inst.expected_degree = static_cast<int>(p + 1);
      break;
    case Family::Welch:
      inst.exponent = pow2(p) + 3;
      inst.valid = un == 2 * p + 1;
      inst.expected_degree = 3;
      break;
    case Family::NihoEven:
      inst.exponent = pow2(p) + pow2(p / 2) - 1;
      inst.valid = p % 2 == 0 && un == 2 * p + 1;
      inst.expected_degree = static_cast<int>((p + 2) / 2);
      break;
    case Family::NihoOdd:
      inst.exponent = pow2(p) + pow2((3 * p + 1) / 2) - 1;
      inst.valid = p % 2 == 1 && un == 2 * p + 1;
      inst.expected_degree = static_cast<int>(p + 1);
      break;
    case Family::Inverse:
      inst.exponent = pow2(2 * p) - 1;
      inst.valid = un == 2 * p + 1;
      inst.expected_degree = n - 1;
      break;
    case Family::Dobbertin:
      inst.exponent = pow2(4 * p) + pow2(3 * p) + pow2(2 * p) + pow2(p) - 1;
      inst.valid = un == 5 * p;
      inst.expected_degree = static_cast<int>(p + 3);
      break;
  }
  return inst;
}

std::vector<FamilyInstance> valid_instances(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  std::vector<FamilyInstance> out;
  const unsigned long un = static_cast<unsigned long>(n);
  for (Family f : {Family::Gold, Family::Kasami}) {
    for (unsigned long i = 1; i < un; ++i) {
      if (std::gcd(i, un) == 1) out.push_back(family_exponent(f, i, n));
    }
  }
  if (n >= 3 && n % 2 == 1) {
    const unsigned long t = (un - 1) / 2;
    out.push_back(family_exponent(Family::Welch, t, n));
    out.push_back(family_exponent(t % 2 == 0 ? Family::NihoEven : Family::NihoOdd, t, n));
    out.push_back(family_exponent(Family::Inverse, t, n));
  }
  if (n % 5 == 0) out.push_back(family_exponent(Family::Dobbertin, un / 5, n));
  return out;
}

namespace {

// Rotation of a canonical residue (n-bit pattern, or 2^n-1 itself).
BigNat rot(const BigNat& v, unsigned long s, int n, const BigNat& m) {
  if (s == 0) return v;
  BigNat lo = (v << s) & m;
  BigNat hi = v >> (static_cast<unsigned long>(n) - s);
  return lo + hi;
}

std::string congruence_text(const BigNat& lhs, unsigned long a, const BigNat& rhs, int n) {
  return "2^" + std::to_string(a) + " * " + to_decimal(lhs) + " = " + to_decimal(rhs) + " (mod 2^" +
         std::to_string(n) + " - 1)";
}

struct BigNatHash {
  std::size_t operator()(const BigNat& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    const mpz_srcptr p = v.get_mpz_t();
    for (std::size_t i = 0; i < mpz_size(p); ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i)));
      h *= 0x100000001b3ull;
    }
    return h ^ (h >> 29);
  }
};

// Residues of e(l,k) for l, k in [1, n), grouped by value.
class ElkIndex {
 public:
  explicit ElkIndex(int n) : n_(n), m_(mersenne(n)) {
    std::vector<BigNat> powers(n);
    for (int p = 0; p < n; ++p) powers[p] = pow2(p);
    for (unsigned long k = 1; k < static_cast<unsigned long>(n); ++k) {
      BigNat r = 1;
      unsigned long pos = 0;
      add(r, 1, k);
      for (unsigned long l = 2; l < static_cast<unsigned long>(n); ++l) {
        pos = (pos + k) % n;
        r += powers[pos];
        if (r > m_) r -= m_;
        add(r, l, k);
      }
    }
  }

  int n() const { return n_; }
  const BigNat& modulus() const { return m_; }

  // target must be a canonical residue.
  std::vector<std::pair<ElkWitness, BigNat>> find(const BigNat& target) const {
    std::vector<std::pair<ElkWitness, BigNat>> out;
    for (unsigned long s = 0; s < static_cast<unsigned long>(n_); ++s) {
      const BigNat v = rot(target, s, n_, m_);
      const auto it = by_residue_.find(v);
      if (it == by_residue_.end()) continue;
      // e(l,k) = 2^s T, so 2^{n-s} e(l,k) = T.
      for (const auto& [l, k] : it->second) {
        out.emplace_back(ElkWitness{l, k, (n_ - s) % n_}, v);
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

 private:
  void add(const BigNat& r, unsigned long l, unsigned long k) { by_residue_[r].emplace_back(l, k); }

  int n_;
  BigNat m_;
  std::unordered_map<BigNat, std::vector<std::pair<unsigned long, unsigned long>>, BigNatHash> by_residue_;
};

BigNat canonical(const BigNat& d, int n) { return reduce_mod_mersenne(d, n).value(); }

}  // namespace

EquivalenceWitness cyclotomic_equivalent(const BigNat& d, const BigNat& e, int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const BigNat m = mersenne(n);
  const BigNat dr = canonical(d, n);
  const BigNat er = canonical(e, n);
  auto holds = [&](const BigNat& base, unsigned long a) { return (pow2(a) * base - er) % m == 0; };
  for (unsigned long a = 0; a < static_cast<unsigned long>(n); ++a) {
    if (rot(dr, a, n, m) == er && holds(dr, a)) {
      return {WitnessKind::Shift, a, congruence_text(dr, a, er, n)};
    }
  }
  if (gcd(dr, m) == 1) {
    const BigNat inv = mod_inverse(dr, n);
    for (unsigned long a = 0; a < static_cast<unsigned long>(n); ++a) {
      if (rot(inv, a, n, m) == er && holds(inv, a)) {
        return {WitnessKind::InverseShift, a,
                congruence_text(inv, a, er, n) + ", " + to_decimal(inv) + " = " + to_decimal(dr) + "^-1"};
      }
    }
  }
  return {WitnessKind::None, 0, ""};
}

BigNat coset_min(const BigNat& d, int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const BigNat m = mersenne(n);
  const BigNat dr = canonical(d, n);
  BigNat best = dr;
  for (unsigned long a = 1; a < static_cast<unsigned long>(n); ++a) {
    BigNat v = rot(dr, a, n, m);
    if (v < best) best = std::move(v);
  }
  return best;
}

std::vector<FamilyMatch> classify(const BigNat& d, int n) {
  std::vector<FamilyMatch> out;
  for (FamilyInstance& inst : valid_instances(n)) {
    EquivalenceWitness w = cyclotomic_equivalent(d, inst.exponent, n);
    if (w.kind != WitnessKind::None) out.push_back({std::move(inst), std::move(w)});
  }
  return out;
}

std::vector<ElkWitness> elk_equivalence_scan(int n, const BigNat& target, bool use_inverse) {
  if (n < 2) throw DomainError("elk_equivalence_scan needs n >= 2");
  const BigNat t = use_inverse ? mod_inverse(target, n) : canonical(target, n);
  std::vector<ElkWitness> out;
  for (auto& [w, residue] : ElkIndex(n).find(t)) out.push_back(w);
  return out;
}

std::vector<DobbertinInverseEntry> dobbertin_inverse_scan(int n_max, unsigned workers) {
  if (n_max > 200) throw DomainError("dobbertin_inverse_scan is limited to n_max <= 200");
  std::vector<DobbertinInverseEntry> out;
  for (int n = 5; n <= n_max; n += 5) out.push_back({n, static_cast<unsigned long>(n / 5), false, {}, ""});
  parallel_for(out.size(), workers, [&](std::size_t i) {
    DobbertinInverseEntry& entry = out[i];
    const BigNat d = family_exponent(Family::Dobbertin, entry.t, entry.n).exponent;
    const BigNat g = gcd(d, mersenne(entry.n));
    if (g != 1) {
      entry.note = "skipped: gcd(D_t, 2^n - 1) = " + to_decimal(g);
      return;
    }
    entry.invertible = true;
    const BigNat inv = mod_inverse(d, entry.n);
    entry.note = "D_t^-1 = " + to_decimal(inv);
    for (auto& [w, residue] : ElkIndex(entry.n).find(inv)) entry.witnesses.push_back(w);
  });
  return out;
}

bool TheoremReport::ok() const {
  return unexpected.empty() && std::all_of(claims.begin(), claims.end(), [](const ClaimCheck& c) { return c.holds; });
}

namespace {

struct Target {
  unsigned long param;
  bool inverse;
  BigNat value;  // canonical residue to look up
};

// Pushes the direct target and, if it exists, the inverse target.
void push_both(std::vector<Target>& out, unsigned long param, const BigNat& d, int n, bool direct, bool inverse) {
  const BigNat r = canonical(d, n);
  if (direct) out.push_back({param, false, r});
  if (inverse && gcd(r, mersenne(n)) == 1) out.push_back({param, true, mod_inverse(r, n)});
}

std::vector<Target> targets_for(TheoremId id, int n) {
  std::vector<Target> out;
  const unsigned long un = static_cast<unsigned long>(n);
  const unsigned long t = (un - 1) / 2;
  switch (id) {
    case TheoremId::Welch:
      if (n % 2 == 1) push_both(out, t, family_exponent(Family::Welch, t, n).exponent, n, true, true);
      break;
    case TheoremId::NihoEven:
      if (n % 2 == 1 && t % 2 == 0) push_both(out, t, family_exponent(Family::NihoEven, t, n).exponent, n, true, true);
      break;
    case TheoremId::NihoOdd:
      if (n % 2 == 1 && t % 2 == 1) push_both(out, t, family_exponent(Family::NihoOdd, t, n).exponent, n, true, true);
      break;
    case TheoremId::Kasami:
    case TheoremId::KasamiInverse:
      for (unsigned long i = 1; i < un; ++i) {
        if (std::gcd(i, un) != 1) continue;
        const bool inv = id == TheoremId::KasamiInverse;
        push_both(out, i, family_exponent(Family::Kasami, i, n).exponent, n, !inv, inv);
      }
      break;
    case TheoremId::Dobbertin:
      if (n % 5 == 0) push_both(out, un / 5, family_exponent(Family::Dobbertin, un / 5, n).exponent, n, true, false);
      break;
  }
  return out;
}

// The exception set each theorem asserts, as a predicate on a coincidence.
bool asserted_exception(TheoremId id, const Coincidence& c) {
  const unsigned long un = static_cast<unsigned long>(c.n);
  switch (id) {
    case TheoremId::Welch:
    case TheoremId::NihoEven: return c.param <= 2;
    case TheoremId::NihoOdd: return c.param <= 1;
    // K_t and K_{n-t} share a coset, so the theorem's t > 2 covers min(t, n-t).
    case TheoremId::Kasami: return std::min(c.param, un - c.param) <= 2;
    case TheoremId::KasamiInverse: return c.param == 1 || c.param == un - 1 || c.n == 5;
    case TheoremId::Dobbertin: return c.n == 5 || c.n == 10;
  }
  return false;
}

bool has(const std::vector<Coincidence>& cs, int n, bool inverse, unsigned long l, unsigned long k) {
  return std::any_of(cs.begin(), cs.end(), [&](const Coincidence& c) {
    return c.n == n && c.inverse == inverse && c.witness.l == l && c.witness.k == k;
  });
}

std::string residue_of(const std::vector<Coincidence>& cs, int n, unsigned long l, unsigned long k) {
  for (const Coincidence& c : cs) {
    if (c.n == n && c.witness.l == l && c.witness.k == k) return to_decimal(c.elk_residue);
  }
  return "none";
}

void presence_claim(TheoremReport& r, std::string claim, int n, bool inverse, unsigned long l, unsigned long k,
                    std::optional<unsigned long> residue = std::nullopt) {
  if (n < r.n_lo || n > r.n_hi) return;
  ClaimCheck c;
  c.claim = std::move(claim);
  const std::string got = residue_of(r.coincidences, n, l, k);
  c.holds = has(r.coincidences, n, inverse, l, k) && (!residue || got == std::to_string(*residue));
  c.observed = "e(" + std::to_string(l) + "," + std::to_string(k) + ") residue " + got +
               (c.holds ? ", witness present" : ", witness missing");
  r.claims.push_back(std::move(c));
}

void add_claims(TheoremReport& r) {
  switch (r.id) {
    case TheoremId::Welch:
      presence_claim(r, "t=1: Welch exponent 5 = e(2,2)", 3, false, 2, 2, 5);
      presence_claim(r, "t=2: Welch inverse 7^-1 = 9 = e(2,3)", 5, true, 2, 3, 9);
      break;
    case TheoremId::NihoEven:
      presence_claim(r, "t=2: e(2,2) is the Niho exponent 5", 5, false, 2, 2, 5);
      presence_claim(r, "t=2: Niho inverse equivalent to e(3,1)", 5, true, 3, 1);
      presence_claim(r, "t=2: Niho inverse equivalent to e(3,4)", 5, true, 3, 4);
      break;
    case TheoremId::NihoOdd:
      presence_claim(r, "t=1: odd Niho exponent coincides with Gold e(2,1)", 3, false, 2, 1);
      presence_claim(r, "t=1: odd Niho exponent coincides with Gold e(2,2)", 3, false, 2, 2);
      break;
    case TheoremId::Dobbertin:
      presence_claim(r, "n=5: e(4,4) = 29 is equivalent to D_1", 5, false, 4, 4, 29);
      presence_claim(r, "n=10: e(9,2) = 426 is equivalent to D_2", 10, false, 9, 2, 426);
      break;
    case TheoremId::Kasami: {
      if (r.n_lo > 5 || r.n_hi < 5) break;
      std::vector<unsigned long> got;
      for (const Coincidence& c : r.coincidences) {
        if (c.n == 5) got.push_back(to_u64(c.elk_residue));
      }
      std::sort(got.begin(), got.end());
      got.erase(std::unique(got.begin(), got.end()), got.end());
      const std::vector<unsigned long> printed{5, 7, 9, 25};
      std::string seen;
      for (unsigned long v : got) seen += (seen.empty() ? "" : ",") + std::to_string(v);
      r.claims.push_back({"n=5: Kasami coincidences are {5,7,9,25}", got == printed, "{" + seen + "}"});
      break;
    }
    case TheoremId::KasamiInverse: {
      std::string missing;
      int checked = 0;
      for (int n = std::max(r.n_lo, 3); n <= std::min(r.n_hi, 31); ++n) {
        if (n % 2 == 0) continue;
        ++checked;
        const unsigned long l = (static_cast<unsigned long>(n) + 1) / 2;
        const bool ok = std::any_of(r.coincidences.begin(), r.coincidences.end(),
                                    [&](const Coincidence& c) {
                                      return c.n == n && c.param == 1 && c.witness.l == l && c.witness.k == 2;
                                    }) &&
                        std::any_of(r.coincidences.begin(), r.coincidences.end(), [&](const Coincidence& c) {
                          return c.n == n && c.param == static_cast<unsigned long>(n - 1) && c.witness.l == l &&
                                 c.witness.k == 2;
                        });
        if (!ok) missing += (missing.empty() ? "" : ",") + std::to_string(n);
      }
      if (checked > 0) {
        r.claims.push_back({"odd n <= 31: K_1^-1 and K_{n-1}^-1 realized by e((n+1)/2, 2)", missing.empty(),
                            missing.empty() ? std::to_string(checked) + " dimensions, all realized"
                                            : "missing at n=" + missing});
      }
      break;
    }
  }
}

}  // namespace

TheoremReport theorem_scan(TheoremId id, int n_lo, int n_hi, unsigned workers) {
  if (n_lo > n_hi) throw DomainError("empty dimension range");
  if (n_hi > 200) throw DomainError("theorem scans are limited to n <= 200");
  TheoremReport report;
  report.id = id;
  report.n_lo = n_lo;
  report.n_hi = n_hi;
  // Every family is degenerate below n = 3 (all exponents fall in one or two
  // classes), so scanning starts there.
  const int lo = std::max(n_lo, 3);
  std::vector<int> dims;
  for (int n = lo; n <= n_hi; ++n) {
    if (!targets_for(id, n).empty()) dims.push_back(n);
  }
  std::vector<std::vector<Coincidence>> per_n(dims.size());
  parallel_for(dims.size(), workers, [&](std::size_t i) {
    const int n = dims[i];
    const ElkIndex index(n);
    for (const Target& t : targets_for(id, n)) {
      for (auto& [w, residue] : index.find(t.value)) {
        per_n[i].push_back({n, t.param, t.inverse, w, residue});
      }
    }
  });
  for (auto& cs : per_n) {
    for (Coincidence& c : cs) {
      if (!asserted_exception(id, c)) report.unexpected.push_back(c);
      report.coincidences.push_back(std::move(c));
    }
  }
  add_claims(report);
  return report;
}

}  // namespace apnforge
