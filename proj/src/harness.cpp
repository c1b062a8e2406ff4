#include "dioph/harness.hpp"

#include "dioph/pell.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dioph {

namespace {

std::string hit_text(const SearchHit& h) {
  return h.a().get_str() + " " + h.b().get_str() + " " + std::to_string(h.n()) + " " + h.x().get_str();
}

}  // namespace

SearchHit::SearchHit(Integer a, Integer b, std::uint64_t n, Integer x)
    : a_(std::move(a)), b_(std::move(b)), n_(n), x_(std::move(x)) {
  if (x_ < 0 || x_ * x_ != target_exact(a_, b_, n_))
    throw std::invalid_argument("not a solution: " + hit_text(*this));
}

std::vector<SearchHit> search_pair(const Integer& a, const Integer& b, std::uint64_t n_max) {
  if (!(1 < a && a < b)) throw std::invalid_argument("search requires 1 < a < b");
  std::vector<SearchHit> hits;
  Integer an = 1, bn = 1;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    an *= a;
    bn *= b;
    if (auto x = is_perfect_square((an - 1) * (bn - 1))) hits.emplace_back(a, b, n, *x);
  }
  return hits;
}

std::string_view to_string(ExceptionSetTag tag) {
  switch (tag) {
    case ExceptionSetTag::A1: return "A1";
    case ExceptionSetTag::A2: return "A2";
    case ExceptionSetTag::A3: return "A3";
    case ExceptionSetTag::None: return "NONE";
  }
  return "NONE";
}

ExceptionSetTag classify_pair(const Integer& a, const Integer& b) {
  if (!(1 < a && a < b)) throw std::invalid_argument("classify requires 1 < a < b");
  if ((a == 2 || a == 4) && b == 22) return ExceptionSetTag::A1;
  if (!is_perfect_square((a - 1) * (b - 1))) return ExceptionSetTag::None;
  const bool same_parity = mpz_odd_p(a.get_mpz_t()) == mpz_odd_p(b.get_mpz_t());
  if (same_parity) {
    if ((a == 3 && b == 9) || (a == 8 && b == 64)) return ExceptionSetTag::None;
    return ExceptionSetTag::A2;
  }
  const Integer ab = a * b;
  if (mpz_divisible_ui_p(ab.get_mpz_t(), 4)) return ExceptionSetTag::A3;
  return ExceptionSetTag::None;
}

std::vector<SearchHit> scan(std::uint64_t amax, std::uint64_t bmax, std::uint64_t nmax) {
  std::vector<SearchHit> out;
  for (std::uint64_t a = 2; a <= amax && a < bmax; ++a)
    for (std::uint64_t b = a + 1; b <= bmax; ++b) {
      auto hits = search_pair(from_u64(a), from_u64(b), nmax);
      out.insert(out.end(), hits.begin(), hits.end());
    }
  return out;
}

std::string format_hits(const std::vector<SearchHit>& hits) {
  std::string out;
  for (const auto& h : hits) out += hit_text(h) + "\n";
  return out;
}

Theorem1Report verify_theorem_1(std::uint64_t n_max, std::uint64_t bmax) {
  if (n_max < 5) throw std::invalid_argument("n_max must be at least 5");
  Theorem1Report r;
  r.n_max = n_max;
  r.bmax = bmax;
  for (std::uint64_t a = 2; a < bmax; ++a)
    for (std::uint64_t b = a + 1; b <= bmax; ++b) {
      ++r.pairs;
      const Integer A = from_u64(a), B = from_u64(b);
      const bool tagged = classify_pair(A, B) != ExceptionSetTag::None;
      if (tagged) ++r.exceptional_pairs;
      for (auto& h : search_pair(A, B, n_max)) {
        if (!tagged) {
          if (h.n() == 1)
            r.trivial.push_back(h);
          else if (h.n() != 2 && !(a == 2 && b == 4 && h.n() == 3))
            r.counterexamples.push_back(h);
        }
        r.hits.push_back(std::move(h));
      }
    }
  return r;
}

bool ReplayReport::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const auto& l) { return l.ok; });
}

ReplayReport replay_solved_pairs() {
  ReplayReport report;
  auto check = [&](std::string name, bool ok, std::string detail = {}) {
    report.lines.push_back({std::move(name), ok, std::move(detail)});
  };

  struct Solved {
    unsigned a, b, x;
  };
  const Solved solved[] = {{2, 50, 7}, {4, 49, 12}, {12, 45, 22}, {13, 76, 30}, {20, 77, 38}, {28, 49, 36}, {45, 100, 66}};
  for (const auto& s : solved) {
    const std::string name = "pair (" + std::to_string(s.a) + "," + std::to_string(s.b) + ")";
    const auto t0 = std::chrono::steady_clock::now();
    const Certificate cert = sieve(Pair::make(s.a, s.b));
    const VerificationReport vr = verify_certificate(cert);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    const std::vector<KnownSolution> expected{{1, Integer(s.x)}};
    const bool ok = cert.status == CertificateStatus::Complete && cert.known_solutions == expected && vr.passed();
    std::ostringstream d;
    d << to_string(cert.status) << ", " << cert.known_solutions.size() << " known solution(s), "
      << cert.sieve_classes.size() << " witnesses, " << vr.count(ItemStatus::Fail) << " failed / "
      << vr.count(ItemStatus::Assumed) << " assumed items, " << ms << " ms";
    check(name, ok, d.str());
  }

  auto symbol = [&](long a, long n) {
    const int j = jacobi(Integer(a), Integer(n));
    check("jacobi(" + std::to_string(a) + "," + std::to_string(n) + ") = -1", j == -1, "got " + std::to_string(j));
  };
  for (auto [a, n] : {std::pair{11L, 17L}, {2, 13}, {5, 13}, {11, 31}, {3, 31}, {102, 241}, {8, 11}, {5, 7},
                      {43, 73}, {45, 73}, {15, 73}, {31, 73}, {10, 73}, {13, 37}, {14, 109}, {13, 109}, {59, 109}})
    symbol(a, n);

  auto power = [&](long a, long e, long m, long want) {
    const Integer got = mod_pow(Integer(a), Integer(e), Integer(m));
    check(std::to_string(a) + "^" + std::to_string(e) + " mod " + std::to_string(m) + " = " + std::to_string(want),
          got == want, "got " + got.get_str());
  };
  power(13, 8, 17, 1);
  power(76, 8, 17, 1);
  power(28, 8, 17, 16);
  power(49, 8, 17, 1);

  const PellFundamental f = pell_fundamental(6083);
  check("pell 6083 -> (78,1)", f.x1 == 78 && f.y1 == 1, "got (" + f.x1.get_str() + "," + f.y1.get_str() + ")");

  struct Value {
    unsigned a, b, n, m, want;
  };
  const Value values[] = {{13, 76, 5, 17, 11},  {28, 49, 5, 13, 2},    {28, 49, 21, 13, 5},  {28, 49, 37, 31, 11},
                          {28, 49, 85, 31, 3},  {28, 49, 181, 241, 102}, {28, 49, 229, 11, 8}, {45, 100, 5, 7, 5},
                          {45, 100, 29, 7, 5},  {45, 100, 21, 73, 43}, {45, 100, 37, 73, 45}, {45, 100, 45, 73, 15},
                          {45, 100, 61, 73, 31}, {45, 100, 69, 73, 10}, {45, 100, 53, 37, 13}, {45, 100, 13, 109, 14},
                          {45, 100, 85, 109, 13}, {45, 100, 157, 109, 59}};
  for (const auto& v : values) {
    const Integer got = target_value(Pair::make(v.a, v.b), TargetForm::Raw, v.n, v.m);
    check("(" + std::to_string(v.a) + "," + std::to_string(v.b) + ") RAW n=" + std::to_string(v.n) + " mod " +
              std::to_string(v.m) + " = " + std::to_string(v.want),
          got == v.want, "got " + got.get_str());
  }

  // Odd n >= 3 whose factored value can be a square mod 8 all lie in 5 mod 8.
  const auto squares8 = square_residue_mask(8);
  for (auto [a, b] : {std::pair{13u, 76u}, {28, 49}, {45, 100}}) {
    const Pair p = Pair::make(a, b);
    std::set<std::uint64_t> open;
    for (std::uint64_t n = 3; n < 400; n += 2)
      if (squares8[target_value(p, TargetForm::Factored, n, 8).get_ui()]) open.insert(n % 8);
    check("(" + std::to_string(a) + "," + std::to_string(b) + ") survives only n = 5 mod 8", open == std::set<std::uint64_t>{5});
  }
  {
    const Pair p = Pair::make(28, 49);
    const auto squares17 = square_residue_mask(17);
    std::set<std::uint64_t> open;
    for (std::uint64_t n = 5; n < 5000; n += 8)
      if (squares17[target_value(p, TargetForm::Raw, n, 17).get_ui()]) open.insert(n % 48);
    check("(28,49) n = 5 mod 8 survives mod 17 as 5, 21, 37 mod 48", open == std::set<std::uint64_t>{5, 21, 37});
  }
  return report;
}

std::string format_replay(const ReplayReport& report) {
  std::ostringstream out;
  for (const auto& l : report.lines) {
    out << (l.ok ? "PASS " : "FAIL ") << l.name;
    if (!l.detail.empty()) out << ": " << l.detail;
    out << '\n';
  }
  return out.str();
}

std::vector<std::pair<Integer, Integer>> cubic_scan(std::uint64_t y_max) {
  std::vector<std::pair<Integer, Integer>> out;
  Integer x;
  for (std::uint64_t y = 1; y <= y_max; ++y) {
    const Integer Y = from_u64(y);
    const Integer rhs = 2 * Y * Y - 1;
    if (mpz_root(x.get_mpz_t(), rhs.get_mpz_t(), 3) != 0) out.emplace_back(x, Y);
  }
  return out;
}

GateConsistencyReport gate_consistency(std::uint64_t bmax, std::uint64_t n_max) {
  GateConsistencyReport r;
  for (std::uint64_t a = 2; a < bmax; ++a)
    for (std::uint64_t b = a + 1; b <= bmax; ++b) {
      const Pair p = Pair::make(a, b);
      const auto gates = gate_even(p);
      if (gates.empty()) continue;
      ++r.pairs_checked;
      r.gates_fired += gates.size();
      for (std::uint64_t n = 2; n <= n_max; n += 2) {
        auto x = is_perfect_square(target_exact(p.a, p.b, n));
        if (!x) continue;
        for (const auto& g : gates) {
          const bool eliminated = std::any_of(g.classes_eliminated.begin(), g.classes_eliminated.end(),
                                              [n](const auto& c) { return c.contains(n); });
          const bool residual =
              std::find(g.residual_explicit_n.begin(), g.residual_explicit_n.end(), n) != g.residual_explicit_n.end();
          if (eliminated && !residual) r.violations.push_back({p.a, p.b, g.kind, n, *x});
        }
      }
    }
  return r;
}

}  // namespace dioph
