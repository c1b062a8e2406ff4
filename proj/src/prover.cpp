#include "dioph/prover.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dioph {

namespace {

struct KindName {
  GateKind kind;
  std::string_view name;
  std::string_view citation;
};

constexpr std::array<KindName, 9> kKinds{{
    {GateKind::TheoremT2, "THEOREM_T2",
     "coprime bases: (a^n-1)(b^n-1) square with n = 2 (mod 4) forces n = 2 (Pell/Lucas argument relying on "
     "Bennett and Roberts: x^p = 2y^2 - 1 has only trivial solutions for primes p > 3)"},
    {GateKind::TheoremT3, "THEOREM_T3",
     "nu2(a) != nu2(b) and gcd(a,b) > 1: no solution with n even (Lucas 2-adic valuation argument)"},
    {GateKind::LemmaL0, "LEMMA_L0", "Cohn: a solution with 4 | n has n = 4 and (a,b) = (13,239)"},
    {GateKind::TheoremGsq, "THEOREM_GSQ",
     "a, b mutually non-dividing, g = gcd(a,b) > 1, g^2 > a or g^2 > b: no solution with n even"},
    {GateKind::CorollaryDiv, "COROLLARY_DIV", "a | b and a > b/a: no solution with n even"},
    {GateKind::TheoremOddOdd, "THEOREM_ODDODD",
     "a, b odd, g = gcd(a,b) > 1, a/g = 3 or b/g = 3 (mod 4): no solution with n = 2 (mod 4)"},
    {GateKind::Pair250Even, "THEOREM_2_50_EVEN",
     "(a,b) = (2,50): no solution with n even (5 | V_n(P,-1) iff 5 | P and n odd)"},
    {GateKind::Pair250Descent, "THEOREM_2_50_DESCENT",
     "(a,b) = (2,50): n = 1 (mod 4) forces n = 1 (minimal-solution descent on 2x^2 - dy^2 = 1 and "
     "V_3n = V_n(V_n^2 - 3))"},
    {GateKind::SquareMultiple, "THEOREM_SQUARE_MULTIPLE",
     "b = c^2 a with c even: (a^n-1)(c^2n a^n-1) = x^2 has no solution"},
}};

const KindName& kind_entry(GateKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k;
  throw std::logic_error("unknown gate kind");
}

std::string str(const Integer& v) { return v.get_str(10); }

GateStep step(GateKind kind, std::vector<ResidueClass> classes, std::vector<std::uint64_t> residual, std::string trace) {
  return GateStep{kind, std::move(classes), std::move(residual), std::move(trace)};
}

// Largest divisor of n coprime to a.
std::uint64_t coprime_part(std::uint64_t n, const Integer& a) {
  while (n > 1) {
    const std::uint64_t g = gcd_u64(n, mpz_fdiv_ui(a.get_mpz_t(), n));
    if (g == 1) break;
    n /= g;
  }
  return n;
}

std::uint64_t mod_u64(const Integer& a, std::uint64_t m) { return mpz_fdiv_ui(a.get_mpz_t(), m); }

}  // namespace

Pair Pair::make(const Integer& a, const Integer& b) {
  if (!(1 < a && a < b)) throw std::invalid_argument("pair requires 1 < a < b");
  Pair p;
  p.a = a;
  p.b = b;
  mpz_gcd(p.g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (auto s = is_perfect_square((a - 1) * (b - 1))) {
    p.square_part_ok = true;
    p.s = *s;
  }
  return p;
}

ResidueClass make_class(std::uint64_t r, std::uint64_t M) {
  if (M == 0 || r >= M) throw std::invalid_argument("residue class requires 0 <= r < M");
  return ResidueClass{r, M};
}

std::vector<std::uint64_t> SieveConfig::default_moduli_pool() {
  std::vector<std::uint64_t> pool{8, 16};
  std::vector<bool> composite(1001, false);
  for (std::uint64_t p = 2; p <= 1000; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= 1000; q += p) composite[q] = true;
    if (p > 2) pool.push_back(p);
  }
  return pool;
}

std::string_view to_string(TargetForm form) { return form == TargetForm::Raw ? "RAW" : "FACTORED"; }

std::string_view to_string(GateKind kind) { return kind_entry(kind).name; }

std::string_view to_string(CertificateStatus status) {
  return status == CertificateStatus::Complete ? "COMPLETE" : "PARTIAL";
}

TargetForm parse_target_form(std::string_view s) {
  if (s == "RAW") return TargetForm::Raw;
  if (s == "FACTORED") return TargetForm::Factored;
  throw std::invalid_argument("unknown value_form '" + std::string(s) + "'");
}

GateKind parse_gate_kind(std::string_view s) {
  for (const auto& k : kKinds)
    if (k.name == s) return k.kind;
  throw std::invalid_argument("unknown gate kind '" + std::string(s) + "'");
}

CertificateStatus parse_status(std::string_view s) {
  if (s == "COMPLETE") return CertificateStatus::Complete;
  if (s == "PARTIAL") return CertificateStatus::Partial;
  throw std::invalid_argument("unknown status '" + std::string(s) + "'");
}

std::string_view gate_citation(GateKind kind) { return kind_entry(kind).citation; }

std::vector<GateStep> gate_even(const Pair& pair) {
  const Integer& a = pair.a;
  const Integer& b = pair.b;
  const Integer& g = pair.g;
  const auto va = nu2(a), vb = nu2(b);
  const std::string gcd_text = "gcd(" + str(a) + "," + str(b) + ")=" + str(g);
  std::vector<GateStep> steps;

  if (g == 1) steps.push_back(step(GateKind::TheoremT2, {{2, 4}}, {2}, gcd_text));

  if (g > 1 && va != vb) {
    std::ostringstream t;
    t << gcd_text << " > 1; nu2(" << a << ")=" << va << " != nu2(" << b << ")=" << vb;
    steps.push_back(step(GateKind::TheoremT3, {{0, 2}}, {}, t.str()));
  }

  steps.push_back(step(GateKind::LemmaL0, {{0, 4}}, {4}, "1 < " + str(a) + " < " + str(b)));

  const bool a_div_b = b % a == 0;
  const bool b_div_a = a % b == 0;
  if (g > 1 && !a_div_b && !b_div_a && (g * g > a || g * g > b)) {
    std::ostringstream t;
    t << gcd_text << " > 1; " << a << " does not divide " << b << "; g^2=" << g * g
      << (g * g > a ? " > a=" + str(a) : " > b=" + str(b));
    steps.push_back(step(GateKind::TheoremGsq, {{0, 2}}, {}, t.str()));
  }

  if (a_div_b && a * a > b) {
    std::ostringstream t;
    t << a << " | " << b << "; a=" << a << " > b/a=" << b / a;
    steps.push_back(step(GateKind::CorollaryDiv, {{0, 2}}, {}, t.str()));
  }

  if (mpz_odd_p(a.get_mpz_t()) && mpz_odd_p(b.get_mpz_t()) && g > 1) {
    const Integer ca = a / g, cb = b / g;
    const bool hit_a = mpz_fdiv_ui(ca.get_mpz_t(), 4) == 3;
    const bool hit_b = mpz_fdiv_ui(cb.get_mpz_t(), 4) == 3;
    if (hit_a || hit_b) {
      std::ostringstream t;
      t << "a, b odd; " << gcd_text << " > 1; " << (hit_a ? "a/g=" + str(ca) : "b/g=" + str(cb)) << " = 3 (mod 4)";
      steps.push_back(step(GateKind::TheoremOddOdd, {{2, 4}}, {}, t.str()));
    }
  }
  return steps;
}

std::vector<GateStep> gate_structural(const Pair& pair) {
  std::vector<GateStep> steps;
  if (pair.a == 2 && pair.b == 50) {
    steps.push_back(step(GateKind::Pair250Even, {{0, 2}}, {}, "(a,b) = (2,50)"));
    steps.push_back(step(GateKind::Pair250Descent, {{1, 4}}, {1}, "(a,b) = (2,50)"));
  }
  if (pair.b % pair.a == 0) {
    const Integer q = pair.b / pair.a;
    if (auto c = is_perfect_square(q); c && mpz_even_p(c->get_mpz_t())) {
      std::ostringstream t;
      t << "b/a=" << q << "=" << *c << "^2 with " << *c << " even";
      steps.push_back(step(GateKind::SquareMultiple, {{0, 1}}, {}, t.str()));
    }
  }
  return steps;
}

Integer target_value(const Pair& pair, TargetForm form, const Integer& n, const Integer& m) {
  if (form == TargetForm::Raw) {
    return (mod_pow(pair.a, n, m) - 1 + m) % m * ((mod_pow(pair.b, n, m) - 1 + m) % m) % m;
  }
  if (!pair.square_part_ok) throw std::domain_error("FACTORED form requires (a-1)(b-1) to be a perfect square");
  return geometric_sum_mod(pair.a, n, m) * geometric_sum_mod(pair.b, n, m) % m;
}

Integer target_exact(const Integer& a, const Integer& b, std::uint64_t n) {
  Integer an, bn;
  mpz_pow_ui(an.get_mpz_t(), a.get_mpz_t(), n);
  mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), n);
  return (an - 1) * (bn - 1);
}

WitnessSearch::WitnessSearch(Pair pair, std::vector<std::uint64_t> pool, std::uint64_t preperiod_bound,
                             std::uint64_t max_period, std::uint64_t factor_bound)
    : pair_(std::move(pair)),
      pool_(std::move(pool)),
      bound_(preperiod_bound),
      max_period_(max_period),
      factor_bound_(factor_bound) {}

std::uint64_t WitnessSearch::effective_bound() const {
  std::uint64_t b = bound_;
  for (auto m : pool_) b = std::max<std::uint64_t>(b, ceil_log2(m) + 1);
  return b;
}

const std::vector<bool>& WitnessSearch::residues(std::uint64_t m) {
  auto it = residues_.find(m);
  if (it == residues_.end()) it = residues_.emplace(m, square_residue_mask(m)).first;
  return it->second;
}

const WitnessSearch::Profile& WitnessSearch::profile(std::uint64_t m, TargetForm form) {
  const auto key = std::make_pair(m, static_cast<int>(form));
  if (auto it = profiles_.find(key); it != profiles_.end()) return it->second;

  Profile p;
  p.bound = std::max<std::uint64_t>(bound_, ceil_log2(m) + 1);
  // G(n) mod m = ((a^n - 1) mod m(a-1)) / (a-1), so FACTORED carries a^n modulo m(a-1).
  auto carrier = [&](const Integer& base, std::uint64_t& n_out, std::uint64_t& div_out) {
    Integer n = m;
    div_out = 1;
    if (form == TargetForm::Factored) {
      if (!fits_u64(base - 1, div_out)) return false;
      n *= base - 1;
    }
    return fits_u64(n, n_out) && n_out < (std::uint64_t{1} << 62);
  };
  try {
    if (m >= 2 && (form == TargetForm::Raw || pair_.square_part_ok) && carrier(pair_.a, p.na, p.a1) &&
        carrier(pair_.b, p.nb, p.b1)) {
      p.am = mod_u64(pair_.a, p.na);
      p.bm = mod_u64(pair_.b, p.nb);
      auto period_of = [&](const Integer& base, std::uint64_t n) -> std::uint64_t {
        const std::uint64_t c = coprime_part(n, base);
        return c == 1 ? 1 : *multiplicative_order(base, from_u64(c), factor_bound_);
      };
      p.period = lcm_u64(period_of(pair_.a, p.na), period_of(pair_.b, p.nb));
      p.usable = true;
    }
  } catch (const std::domain_error&) {
    p.usable = false;  // modulus beyond the factoring bound
  } catch (const std::overflow_error&) {
    p.usable = false;
  }
  return profiles_.emplace(key, p).first->second;
}

std::optional<Witness> WitnessSearch::try_modulus(const ResidueClass& cls, std::uint64_t m, TargetForm form) {
  const Profile& p = profile(m, form);
  if (!p.usable) return std::nullopt;
  const std::uint64_t steps = p.period / gcd_u64(p.period, cls.M);
  if (steps > max_period_) return std::nullopt;

  std::uint64_t n0 = cls.r;
  if (n0 <= p.bound) n0 += cls.M * ((p.bound + 1 - n0 + cls.M - 1) / cls.M);

  std::uint64_t x = powmod_u64(p.am, n0, p.na), y = powmod_u64(p.bm, n0, p.nb);
  const std::uint64_t sx = powmod_u64(p.am, cls.M, p.na), sy = powmod_u64(p.bm, cls.M, p.nb);
  const auto& squares = residues(m);

  std::vector<std::uint64_t> values;
  for (std::uint64_t j = 0; j < steps; ++j) {
    const std::uint64_t fa = (x + p.na - 1) % p.na / p.a1 % m;
    const std::uint64_t fb = (y + p.nb - 1) % p.nb / p.b1 % m;
    const std::uint64_t v = mulmod_u64(fa, fb, m);
    if (squares[v]) return std::nullopt;
    values.push_back(v);
    x = mulmod_u64(x, sx, p.na);
    y = mulmod_u64(y, sy, p.nb);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return Witness{cls, m, form, p.bound, std::move(values)};
}

std::optional<Witness> WitnessSearch::find(const ResidueClass& cls) {
  for (auto m : pool_) {
    if (m < 3) continue;
    if (pair_.square_part_ok && gcd_u64(m, mod_u64(pair_.s, m)) > 1) {
      if (auto w = try_modulus(cls, m, TargetForm::Factored)) return w;
    }
    if (auto w = try_modulus(cls, m, TargetForm::Raw)) return w;
  }
  return std::nullopt;
}

std::optional<Witness> find_witness(const Pair& pair, const ResidueClass& cls,
                                    const std::vector<std::uint64_t>& moduli_pool, std::uint64_t preperiod_bound) {
  WitnessSearch search(pair, moduli_pool, preperiod_bound);
  return search.find(cls);
}

Certificate sieve(const Pair& pair, const SieveConfig& config) {
  Certificate cert;
  cert.pair = pair;

  cert.gate_steps = gate_even(pair);
  if (config.structural_gates) {
    auto extra = gate_structural(pair);
    cert.gate_steps.insert(cert.gate_steps.end(), extra.begin(), extra.end());
  }
  auto gated = [&](const ResidueClass& cls) {
    for (const auto& s : cert.gate_steps)
      for (const auto& g : s.classes_eliminated)
        if (g.contains(cls)) return true;
    return false;
  };

  WitnessSearch search(pair, config.moduli_pool, config.explicit_bound, config.max_period, config.factor_bound);
  const std::uint64_t bound = search.effective_bound();

  std::vector<ResidueClass> live{{0, 1}};
  std::uint64_t modulus = 1;
  std::size_t split_index = 0;
  while (!live.empty()) {
    std::vector<ResidueClass> unresolved;
    for (const auto& cls : live) {
      if (gated(cls)) continue;
      if (auto w = search.find(cls)) {
        cert.sieve_classes.push_back(std::move(*w));
      } else {
        unresolved.push_back(cls);
      }
    }
    if (unresolved.empty()) break;
    if (split_index == config.splitting.size() || config.splitting[split_index] < 2 ||
        modulus * config.splitting[split_index] > config.max_modulus) {
      cert.surviving_classes = std::move(unresolved);
      break;
    }
    const std::uint64_t q = config.splitting[split_index++];
    live.clear();
    for (const auto& cls : unresolved)
      for (std::uint64_t i = 0; i < q; ++i) live.push_back({cls.r + cls.M * i, cls.M * q});
    std::sort(live.begin(), live.end());
    modulus *= q;
  }
  std::sort(cert.sieve_classes.begin(), cert.sieve_classes.end(),
            [](const Witness& x, const Witness& y) { return x.cls < y.cls; });

  std::uint64_t explicit_upto = bound;
  for (const auto& s : cert.gate_steps)
    for (auto n : s.residual_explicit_n) explicit_upto = std::max(explicit_upto, n);
  for (std::uint64_t n = 1; n <= explicit_upto; ++n) {
    ExplicitCheck check{n, false, 0};
    if (auto x = is_perfect_square(target_exact(pair.a, pair.b, n))) {
      check.solution = true;
      check.x = *x;
      cert.known_solutions.push_back({n, *x});
    }
    cert.exceptional_n.push_back(std::move(check));
  }

  for (const auto& s : cert.gate_steps) {
    std::string cite(gate_citation(s.kind));
    if (std::find(cert.assumptions.begin(), cert.assumptions.end(), cite) == cert.assumptions.end())
      cert.assumptions.push_back(std::move(cite));
  }

  cert.status = cert.surviving_classes.empty() ? CertificateStatus::Complete : CertificateStatus::Partial;
  if (cert.status == CertificateStatus::Complete) {
    cert.claim = "every solution (n, x) with n >= 1 is listed in known_solutions";
  } else {
    cert.claim = "no solution with 1 <= n <= " + std::to_string(explicit_upto) +
                 " beyond known_solutions; surviving_classes are unresolved above that bound";
  }
  return cert;
}

}  // namespace dioph
