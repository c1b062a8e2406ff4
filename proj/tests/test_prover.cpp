#include "dioph/certificate.hpp"
#include "dioph/prover.hpp"
#include "dioph/verify.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>

using namespace dioph;

namespace {

bool has_kind(const std::vector<GateStep>& steps, GateKind k) {
  return std::any_of(steps.begin(), steps.end(), [k](const auto& s) { return s.kind == k; });
}

const GateStep& find_kind(const std::vector<GateStep>& steps, GateKind k) {
  return *std::find_if(steps.begin(), steps.end(), [k](const auto& s) { return s.kind == k; });
}

// Values of the target over n in the class, n > bound, stepping the powers one
// exponent at a time; FACTORED divides (a^n - 1) mod m(a-1) by a - 1.
std::set<std::uint64_t> walk_values(const Pair& p, const Witness& w, std::uint64_t span) {
  const std::uint64_t m = w.modulus;
  const std::uint64_t da = w.form == TargetForm::Factored ? Integer(p.a - 1).get_ui() : 1;
  const std::uint64_t db = w.form == TargetForm::Factored ? Integer(p.b - 1).get_ui() : 1;
  const std::uint64_t ma = m * da, mb = m * db;
  std::uint64_t x = 1, y = 1;
  const std::uint64_t am = mpz_fdiv_ui(p.a.get_mpz_t(), ma), bm = mpz_fdiv_ui(p.b.get_mpz_t(), mb);
  std::set<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= w.preperiod_bound + span; ++n) {
    x = x * am % ma;
    y = y * bm % mb;
    if (n <= w.preperiod_bound || !w.cls.contains(n)) continue;
    out.insert((x + ma - 1) % ma / da * ((y + mb - 1) % mb / db) % m);
  }
  return out;
}

}  // namespace

TEST_CASE("pairs and classes") {
  const Pair p = Pair::make(13, 76);
  CHECK(p.g == 1);
  CHECK(p.square_part_ok);
  CHECK(p.s == 30);
  CHECK_FALSE(Pair::make(2, 3).square_part_ok);
  CHECK_THROWS_AS(Pair::make(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(Pair::make(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(Pair::make(7, 5), std::invalid_argument);

  const auto c = make_class(5, 8);
  CHECK(c.contains(13));
  CHECK_FALSE(c.contains(6));
  CHECK(make_class(1, 4).contains(c));
  CHECK_FALSE(make_class(3, 4).contains(c));
  CHECK(make_class(0, 1).contains(c));
  CHECK_THROWS_AS(make_class(8, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_class(0, 0), std::invalid_argument);
  CHECK(make_class(7, 8) < make_class(0, 16));
}

TEST_CASE("enum names round-trip") {
  for (auto k : {GateKind::TheoremT2, GateKind::TheoremT3, GateKind::LemmaL0, GateKind::TheoremGsq,
                 GateKind::CorollaryDiv, GateKind::TheoremOddOdd, GateKind::Pair250Even, GateKind::Pair250Descent,
                 GateKind::SquareMultiple}) {
    CHECK(parse_gate_kind(to_string(k)) == k);
    CHECK_FALSE(gate_citation(k).empty());
  }
  CHECK(to_string(GateKind::LemmaL0) == "LEMMA_L0");
  CHECK(parse_target_form("FACTORED") == TargetForm::Factored);
  CHECK(parse_status("PARTIAL") == CertificateStatus::Partial);
  CHECK_THROWS_AS(parse_gate_kind("THEOREM_X"), std::invalid_argument);
}

TEST_CASE("even-exponent gates") {
  auto steps = gate_even(Pair::make(13, 76));
  REQUIRE(steps.size() == 2);
  const auto& t2 = find_kind(steps, GateKind::TheoremT2);
  CHECK(t2.classes_eliminated == std::vector<ResidueClass>{{2, 4}});
  CHECK(t2.residual_explicit_n == std::vector<std::uint64_t>{2});
  const auto& l0 = find_kind(steps, GateKind::LemmaL0);
  CHECK(l0.classes_eliminated == std::vector<ResidueClass>{{0, 4}});
  CHECK(l0.residual_explicit_n == std::vector<std::uint64_t>{4});

  steps = gate_even(Pair::make(28, 49));
  CHECK(has_kind(steps, GateKind::TheoremT3));
  CHECK(find_kind(steps, GateKind::TheoremT3).classes_eliminated == std::vector<ResidueClass>{{0, 2}});
  CHECK_FALSE(has_kind(steps, GateKind::TheoremT2));
  CHECK(has_kind(gate_even(Pair::make(45, 100)), GateKind::TheoremT3));

  // g = 6, 36 > 12: g^2 gate; nu2 equal so no T3
  steps = gate_even(Pair::make(12, 18));
  CHECK(has_kind(steps, GateKind::TheoremGsq));
  CHECK(has_kind(steps, GateKind::TheoremT3) == (nu2(12) != nu2(18)));
  // 5 | 20, 25 > 4
  CHECK(has_kind(gate_even(Pair::make(5, 20)), GateKind::CorollaryDiv));
  CHECK_FALSE(has_kind(gate_even(Pair::make(3, 90)), GateKind::CorollaryDiv));
  // 15 / 3 = 5, 21 / 3 = 7 = 3 (mod 4)
  CHECK(has_kind(gate_even(Pair::make(15, 21)), GateKind::TheoremOddOdd));
  CHECK_FALSE(has_kind(gate_even(Pair::make(5, 45)), GateKind::TheoremOddOdd));
}

TEST_CASE("structural gates match only their exact shapes") {
  auto s = gate_structural(Pair::make(2, 50));
  CHECK(has_kind(s, GateKind::Pair250Even));
  CHECK(find_kind(s, GateKind::Pair250Descent).residual_explicit_n == std::vector<std::uint64_t>{1});
  CHECK(gate_structural(Pair::make(2, 49)).empty());
  CHECK(has_kind(gate_structural(Pair::make(3, 12)), GateKind::SquareMultiple));
  CHECK(has_kind(gate_structural(Pair::make(2, 72)), GateKind::SquareMultiple));
  CHECK(gate_structural(Pair::make(3, 27)).empty());  // c = 3 is odd
}

TEST_CASE("square-multiple pairs have no solutions up to n = 20") {
  for (std::uint64_t a = 2; a <= 100; ++a)
    for (std::uint64_t c = 2; c * c * a <= 100; c += 2)
      for (std::uint64_t n = 1; n <= 20; ++n)
        CHECK_FALSE(is_perfect_square(target_exact(from_u64(a), from_u64(c * c * a), n)));
}

TEST_CASE("target values") {
  const Pair p = Pair::make(13, 76);
  CHECK(target_value(p, TargetForm::Factored, 5, 8) == 1);
  CHECK(target_value(p, TargetForm::Raw, 5, 17) == 11);
  CHECK(target_value(p, TargetForm::Raw, 0, 17) == 0);
  CHECK(target_value(Pair::make(2, 3), TargetForm::Raw, 0, 5) == 0);
  CHECK_THROWS_AS(target_value(Pair::make(2, 3), TargetForm::Factored, 3, 8), std::domain_error);
  for (std::uint64_t n = 0; n < 40; ++n) {
    const Integer exact = target_exact(13, 76, n);
    CHECK(target_value(p, TargetForm::Raw, from_u64(n), 1009) == exact % 1009);
    if (n > 0) CHECK(target_value(p, TargetForm::Factored, from_u64(n), 1009) == exact / 900 % 1009);
  }
}

TEST_CASE("witnesses for (13,76)") {
  const Pair p = Pair::make(13, 76);
  const auto pool = SieveConfig::default_moduli_pool();
  auto w = find_witness(p, make_class(3, 8), pool, 50);
  REQUIRE(w);
  CHECK(w->modulus == 8);
  CHECK(w->form == TargetForm::Factored);
  CHECK(w->values == std::vector<std::uint64_t>{3});

  w = find_witness(p, make_class(1, 8), pool, 50);
  REQUIRE(w);
  CHECK(w->modulus == 8);
  CHECK(w->form == TargetForm::Factored);
  CHECK(w->values == std::vector<std::uint64_t>{5});

  w = find_witness(p, make_class(5, 8), pool, 50);
  REQUIRE(w);
  CHECK(w->modulus == 17);
  CHECK(w->form == TargetForm::Raw);
  CHECK(w->values == std::vector<std::uint64_t>{11});

  // n = 1 itself is a solution, so the whole odd class cannot have a witness at bound 0.
  CHECK_FALSE(find_witness(p, make_class(1, 2), {8, 16}, 0));
}

TEST_CASE("the solved pairs") {
  const std::pair<int, int> pairs[] = {{4, 49}, {12, 45}, {13, 76}, {20, 77}, {28, 49}, {45, 100}};
  const int xs[] = {12, 22, 30, 38, 36, 66};
  for (std::size_t i = 0; i < 6; ++i) {
    CAPTURE(pairs[i].first);
    CAPTURE(pairs[i].second);
    const auto cert = sieve(Pair::make(pairs[i].first, pairs[i].second));
    CHECK(cert.status == CertificateStatus::Complete);
    CHECK(cert.known_solutions == std::vector<KnownSolution>{{1, xs[i]}});
    CHECK(cert.surviving_classes.empty());
    CHECK(verify_certificate(cert).passed());
  }
}

TEST_CASE("(2,50) with and without the structural gates") {
  const Pair p = Pair::make(2, 50);
  const auto full = sieve(p);
  CHECK(full.status == CertificateStatus::Complete);
  CHECK(full.known_solutions == std::vector<KnownSolution>{{1, 7}});
  CHECK(has_kind(full.gate_steps, GateKind::Pair250Descent));
  CHECK(verify_certificate(full).passed());

  SieveConfig plain;
  plain.structural_gates = false;
  const auto partial = sieve(p, plain);
  CHECK(partial.status == CertificateStatus::Partial);
  CHECK(partial.known_solutions == std::vector<KnownSolution>{{1, 7}});
  CHECK(partial.surviving_classes == std::vector<ResidueClass>{{1, 10080}});
  for (const auto& e : partial.exceptional_n) CHECK(e.solution == (e.n == 1));
  CHECK(partial.exceptional_n.size() >= 50);
  const auto report = verify_certificate(partial);
  CHECK(report.passed());
  CHECK(report.surviving_classes == partial.surviving_classes);
}

TEST_CASE("determinism") {
  for (auto [a, b] : {std::pair{13, 76}, {45, 100}, {2, 50}, {7, 11}}) {
    const auto x = serialize_certificate(sieve(Pair::make(a, b)));
    const auto y = serialize_certificate(sieve(Pair::make(a, b)));
    CHECK(x == y);
  }
}

TEST_CASE("soundness, witness completeness and disjointness over all pairs up to 100") {
  std::size_t complete = 0, partial = 0, witnesses = 0;
  for (std::uint64_t a = 2; a < 100; ++a) {
    for (std::uint64_t b = a + 1; b <= 100; ++b) {
      const Pair p = Pair::make(from_u64(a), from_u64(b));
      const auto cert = sieve(p);
      std::set<std::uint64_t> listed;
      for (const auto& k : cert.known_solutions) listed.insert(k.n);
      std::set<std::uint64_t> found;
      for (std::uint64_t n = 1; n <= 40; ++n)
        if (is_perfect_square(target_exact(p.a, p.b, n))) found.insert(n);

      if (cert.status == CertificateStatus::Complete) {
        ++complete;
        CHECK_MESSAGE(found == listed, "pair " << a << "," << b);
      } else {
        ++partial;
        // Anything found must be listed or sit in a surviving class.
        for (auto n : found) {
          const bool open = std::any_of(cert.surviving_classes.begin(), cert.surviving_classes.end(),
                                        [n](const auto& c) { return c.contains(n); });
          CHECK_MESSAGE((listed.count(n) || open), "pair " << a << "," << b << " n=" << n);
        }
      }

      // Witness classes are pairwise disjoint and avoid the gated classes.
      for (std::size_t i = 0; i < cert.sieve_classes.size(); ++i) {
        const auto& ci = cert.sieve_classes[i].cls;
        for (std::size_t j = i + 1; j < cert.sieve_classes.size(); ++j) {
          const auto& cj = cert.sieve_classes[j].cls;
          const auto g = gcd_u64(ci.M, cj.M);
          CHECK(ci.r % g != cj.r % g);
        }
        for (const auto& s : cert.gate_steps)
          for (const auto& gc : s.classes_eliminated) CHECK_FALSE(gc.contains(ci));
      }

      // Spot-check completeness of recorded values on a few pairs (full walk is slow).
      if ((a * 101 + b) % 37 == 0) {
        for (const auto& w : cert.sieve_classes) {
          ++witnesses;
          const std::uint64_t span = 2 * w.cls.M * carmichael(w.modulus * (w.form == TargetForm::Factored
                                                                                ? Integer(p.a - 1).get_ui() * Integer(p.b - 1).get_ui()
                                                                                : 1));
          if (span > 5'000'000) continue;
          const auto seen = walk_values(p, w, span);
          CHECK(seen == std::set<std::uint64_t>(w.values.begin(), w.values.end()));
        }
      }
    }
  }
  MESSAGE("complete=" << complete << " partial=" << partial << " walked witnesses=" << witnesses);
  CHECK(complete > 0);
  CHECK(witnesses > 0);
}
