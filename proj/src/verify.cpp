#include "dioph/verify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace dioph {

namespace {

struct Expected {
  std::vector<ResidueClass> classes;
  std::vector<std::uint64_t> residual;
};

std::string class_text(const ResidueClass& c) {
  return "n=" + std::to_string(c.r) + " mod " + std::to_string(c.M);
}

// Hypotheses re-derived from (a, b) alone; empty when the gate does not apply.
std::optional<Expected> expected_gate(GateKind kind, const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const bool a_odd = mpz_odd_p(a.get_mpz_t()), b_odd = mpz_odd_p(b.get_mpz_t());
  const bool a_div_b = mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t());
  const bool b_div_a = mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t());
  switch (kind) {
    case GateKind::LemmaL0:
      return Expected{{{0, 4}}, {4}};
    case GateKind::TheoremT2:
      if (g == 1) return Expected{{{2, 4}}, {2}};
      return std::nullopt;
    case GateKind::TheoremT3:
      if (g > 1 && nu2(a) != nu2(b)) return Expected{{{0, 2}}, {}};
      return std::nullopt;
    case GateKind::TheoremGsq:
      if (g > 1 && !a_div_b && !b_div_a && (g * g > a || g * g > b)) return Expected{{{0, 2}}, {}};
      return std::nullopt;
    case GateKind::CorollaryDiv:
      if (a_div_b && a * a > b) return Expected{{{0, 2}}, {}};
      return std::nullopt;
    case GateKind::TheoremOddOdd: {
      if (!a_odd || !b_odd || g == 1) return std::nullopt;
      const Integer ca = a / g, cb = b / g;
      if (mpz_fdiv_ui(ca.get_mpz_t(), 4) == 3 || mpz_fdiv_ui(cb.get_mpz_t(), 4) == 3) return Expected{{{2, 4}}, {}};
      return std::nullopt;
    }
    case GateKind::Pair250Even:
      if (a == 2 && b == 50) return Expected{{{0, 2}}, {}};
      return std::nullopt;
    case GateKind::Pair250Descent:
      if (a == 2 && b == 50) return Expected{{{1, 4}}, {1}};
      return std::nullopt;
    case GateKind::SquareMultiple: {
      if (!a_div_b) return std::nullopt;
      auto c = is_perfect_square(b / a);
      if (c && mpz_even_p(c->get_mpz_t())) return Expected{{{0, 1}}, {}};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

struct OrbitResult {
  bool complete = false;
  std::set<std::uint64_t> values;
};

// Walks n = n0, n0 + M, ... carrying (a^n, G_a(n), b^n, G_b(n)) mod m, where
// G(n + M) = G(M) + a^M G(n). The walk stops at the first repeated state.
OrbitResult enumerate_class(const Integer& a, const Integer& b, TargetForm form, std::uint64_t m, std::uint64_t n0,
                            std::uint64_t M, std::uint64_t max_orbit) {
  const Integer mm = from_u64(m), step = from_u64(M), start = from_u64(n0);
  const std::uint64_t pa = mod_pow(a, step, mm).get_ui(), pb = mod_pow(b, step, mm).get_ui();
  const std::uint64_t ga = geometric_sum_mod(a, step, mm).get_ui(), gb = geometric_sum_mod(b, step, mm).get_ui();
  std::array<std::uint64_t, 4> s{mod_pow(a, start, mm).get_ui(), geometric_sum_mod(a, start, mm).get_ui(),
                                 mod_pow(b, start, mm).get_ui(), geometric_sum_mod(b, start, mm).get_ui()};
  OrbitResult out;
  std::set<std::array<std::uint64_t, 4>> seen;
  while (seen.size() < max_orbit) {
    if (!seen.insert(s).second) {
      out.complete = true;
      return out;
    }
    const std::uint64_t v = form == TargetForm::Raw
                                ? mulmod_u64((s[0] + m - 1) % m, (s[2] + m - 1) % m, m)
                                : mulmod_u64(s[1], s[3], m);
    out.values.insert(v);
    s = {mulmod_u64(s[0], pa, m), (ga + mulmod_u64(pa, s[1], m)) % m, mulmod_u64(s[2], pb, m),
         (gb + mulmod_u64(pb, s[3], m)) % m};
  }
  return out;
}

}  // namespace

std::string_view to_string(ItemStatus status) {
  switch (status) {
    case ItemStatus::Pass: return "PASS";
    case ItemStatus::Fail: return "FAIL";
    case ItemStatus::Assumed: return "ASSUMED";
  }
  return "FAIL";
}

std::size_t VerificationReport::count(ItemStatus s) const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [s](const auto& i) { return i.status == s; }));
}

VerificationReport verify_certificate(const Certificate& cert, const VerifyLimits& limits) {
  VerificationReport report;
  report.claimed_status = cert.status;
  report.surviving_classes = cert.surviving_classes;
  const Integer& a = cert.pair.a;
  const Integer& b = cert.pair.b;
  auto add = [&](std::string item, ItemStatus st, std::string detail) {
    report.items.push_back({std::move(item), st, std::move(detail)});
  };

  // Explicit exponents: recompute exactly.
  std::map<std::uint64_t, const ExplicitCheck*> explicit_n;
  for (const auto& e : cert.exceptional_n) {
    const std::string item = "exceptional n=" + std::to_string(e.n);
    if (e.n == 0 || !explicit_n.emplace(e.n, &e).second) {
      add(item, ItemStatus::Fail, e.n == 0 ? "exponent must be >= 1" : "duplicate entry");
      continue;
    }
    Integer an, bn;
    mpz_pow_ui(an.get_mpz_t(), a.get_mpz_t(), e.n);
    mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), e.n);
    const auto root = is_perfect_square((an - 1) * (bn - 1));
    if (root.has_value() != e.solution) {
      add(item, ItemStatus::Fail, std::string("recorded ") + (e.solution ? "solution" : "non-solution") + ", recomputed " +
                                      (root ? "solution" : "non-solution"));
    } else if (root && *root != e.x) {
      add(item, ItemStatus::Fail, "recorded x=" + e.x.get_str() + ", recomputed x=" + root->get_str());
    } else {
      add(item, ItemStatus::Pass, root ? "solution x=" + root->get_str() : "non-solution");
    }
  }

  // Known solutions are exactly the explicit solutions.
  {
    std::vector<KnownSolution> recomputed;
    for (const auto& [n, e] : explicit_n)
      if (e->solution) recomputed.push_back({n, e->x});
    auto listed = cert.known_solutions;
    std::sort(listed.begin(), listed.end(), [](const auto& x, const auto& y) { return x.n < y.n; });
    add("known_solutions", listed == recomputed ? ItemStatus::Pass : ItemStatus::Fail,
        std::to_string(listed.size()) + " listed, " + std::to_string(recomputed.size()) + " among explicit exponents");
  }

  // Gates: hypotheses and eliminated classes re-derived from (a, b).
  for (std::size_t i = 0; i < cert.gate_steps.size(); ++i) {
    const auto& s = cert.gate_steps[i];
    const std::string item = "gate[" + std::to_string(i) + "] " + std::string(to_string(s.kind));
    const auto expected = expected_gate(s.kind, a, b);
    if (!expected) {
      add(item, ItemStatus::Fail, "hypotheses do not hold for this pair");
      continue;
    }
    auto classes = s.classes_eliminated;
    auto residual = s.residual_explicit_n;
    std::sort(classes.begin(), classes.end());
    std::sort(residual.begin(), residual.end());
    if (classes != expected->classes || residual != expected->residual) {
      add(item, ItemStatus::Fail, "eliminated classes or residual exponents differ from the theorem");
      continue;
    }
    auto missing = std::find_if(residual.begin(), residual.end(), [&](auto n) { return !explicit_n.count(n); });
    if (missing != residual.end()) {
      add(item, ItemStatus::Fail, "residual n=" + std::to_string(*missing) + " not explicitly checked");
      continue;
    }
    add(item, ItemStatus::Assumed, "hypotheses verified; theorem cited: " + std::string(gate_citation(s.kind)));
  }

  // Witnesses: full value set by orbit enumeration, none a square.
  const bool square_part = is_perfect_square((a - 1) * (b - 1)).has_value();
  for (std::size_t i = 0; i < cert.sieve_classes.size(); ++i) {
    const auto& w = cert.sieve_classes[i];
    const std::string item = "witness[" + std::to_string(i) + "] " + class_text(w.cls) + " via m=" +
                             std::to_string(w.modulus) + " " + std::string(to_string(w.form));
    if (w.form == TargetForm::Factored && !square_part) {
      add(item, ItemStatus::Fail, "FACTORED form needs (a-1)(b-1) to be a square");
      continue;
    }
    if (w.modulus < 3 || w.modulus > 100'000'000) {
      add(item, ItemStatus::Fail, "modulus out of range");
      continue;
    }
    // Classes partition the exponents: a witness shares no member with any other class.
    std::optional<ResidueClass> clash;
    auto meets = [&](const ResidueClass& c) {
      const auto g = gcd_u64(c.M, w.cls.M);
      if (!clash && c.r % g == w.cls.r % g) clash = c;
    };
    for (std::size_t j = 0; j < cert.sieve_classes.size(); ++j)
      if (j != i) meets(cert.sieve_classes[j].cls);
    for (const auto& s : cert.gate_steps)
      for (const auto& c : s.classes_eliminated) meets(c);
    for (const auto& c : cert.surviving_classes) meets(c);
    if (clash) {
      add(item, ItemStatus::Fail, "overlaps class " + class_text(*clash));
      continue;
    }
    std::uint64_t unchecked = 0;
    for (std::uint64_t n = w.cls.r == 0 ? w.cls.M : w.cls.r; n <= w.preperiod_bound; n += w.cls.M) {
      if (!explicit_n.count(n)) {
        unchecked = n;
        break;
      }
    }
    if (unchecked) {
      add(item, ItemStatus::Fail, "n=" + std::to_string(unchecked) + " below the pre-period bound is not explicitly checked");
      continue;
    }
    std::uint64_t n0 = w.cls.r;
    if (n0 <= w.preperiod_bound) n0 += w.cls.M * ((w.preperiod_bound - n0) / w.cls.M + 1);
    const auto orbit = enumerate_class(a, b, w.form, w.modulus, n0, w.cls.M, limits.max_orbit);
    if (!orbit.complete) {
      add(item, ItemStatus::Fail, "orbit enumeration limit reached");
      continue;
    }
    const std::set<std::uint64_t> recorded(w.values.begin(), w.values.end());
    if (recorded != orbit.values || recorded.size() != w.values.size()) {
      add(item, ItemStatus::Fail, "recorded values differ from recomputed value set");
      continue;
    }
    const auto squares = square_residues_mod(w.modulus);
    auto hit = std::find_if(recorded.begin(), recorded.end(),
                            [&](auto v) { return std::binary_search(squares.begin(), squares.end(), v); });
    if (hit != recorded.end()) {
      add(item, ItemStatus::Fail, std::to_string(*hit) + " is a square mod " + std::to_string(w.modulus));
      continue;
    }
    add(item, ItemStatus::Pass, std::to_string(recorded.size()) + " value(s), all non-squares");
  }

  // Coverage of every residue modulo the lcm of all class moduli.
  {
    std::uint64_t L = 1;
    bool too_big = false;
    auto fold = [&](const ResidueClass& c) {
      if (too_big) return;
      try {
        L = lcm_u64(L, c.M);
      } catch (const std::overflow_error&) {
        too_big = true;
      }
      if (L > limits.max_coverage_modulus) too_big = true;
    };
    for (const auto& s : cert.gate_steps)
      for (const auto& c : s.classes_eliminated) fold(c);
    for (const auto& w : cert.sieve_classes) fold(w.cls);
    for (const auto& c : cert.surviving_classes) fold(c);

    if (too_big) {
      add("coverage", ItemStatus::Fail, "lcm of class moduli exceeds the enumeration limit");
    } else {
      std::vector<char> covered(L, 0);
      auto mark = [&](const ResidueClass& c, char tag) {
        for (std::uint64_t r = c.r; r < L; r += c.M)
          if (!covered[r]) covered[r] = tag;
      };
      for (const auto& s : cert.gate_steps)
        for (const auto& c : s.classes_eliminated) mark(c, 1);
      for (const auto& w : cert.sieve_classes) mark(w.cls, 1);
      for (const auto& c : cert.surviving_classes) mark(c, 2);
      const auto gaps = static_cast<std::uint64_t>(std::count(covered.begin(), covered.end(), 0));
      const auto open = static_cast<std::uint64_t>(std::count(covered.begin(), covered.end(), 2));
      std::ostringstream d;
      d << "modulo " << L << ": " << (L - gaps - open) << " eliminated, " << open << " surviving, " << gaps << " uncovered";
      const bool ok = gaps == 0 && (cert.status == CertificateStatus::Partial || open == 0);
      add("coverage", ok ? ItemStatus::Pass : ItemStatus::Fail, d.str());
    }
  }

  {
    const bool consistent = (cert.status == CertificateStatus::Complete) == cert.surviving_classes.empty();
    add("status", consistent ? ItemStatus::Pass : ItemStatus::Fail,
        std::string(to_string(cert.status)) + " with " + std::to_string(cert.surviving_classes.size()) +
            " surviving class(es)");
  }
  return report;
}

std::string format_report(const VerificationReport& report) {
  std::ostringstream out;
  for (const auto& i : report.items) out << to_string(i.status) << ' ' << i.item << ": " << i.detail << '\n';
  for (const auto& c : report.surviving_classes) out << "SURVIVING " << class_text(c) << '\n';
  out << "summary: " << report.count(ItemStatus::Pass) << " pass, " << report.count(ItemStatus::Fail) << " fail, "
      << report.count(ItemStatus::Assumed) << " assumed; certificate " << to_string(report.claimed_status) << '\n';
  return out.str();
}

}  // namespace dioph
