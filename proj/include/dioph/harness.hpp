#pragma once

// Desk-scale search over (a^n - 1)(b^n - 1) = x^2 and the golden replay suite.

#include "dioph/prover.hpp"
#include "dioph/verify.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dioph {

class SearchHit {
 public:
  /// Throws std::invalid_argument if (a^n - 1)(b^n - 1) != x^2.
  SearchHit(Integer a, Integer b, std::uint64_t n, Integer x);

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  std::uint64_t n() const { return n_; }
  const Integer& x() const { return x_; }

  friend bool operator==(const SearchHit&, const SearchHit&) = default;

 private:
  Integer a_, b_;
  std::uint64_t n_;
  Integer x_;
};

/// Every n in 1..n_max with a square target. Requires 1 < a < b.
std::vector<SearchHit> search_pair(const Integer& a, const Integer& b, std::uint64_t n_max);

enum class ExceptionSetTag { A1, A2, A3, None };

std::string_view to_string(ExceptionSetTag tag);

/// Requires 1 < a < b. The two A2 exclusions are read as the pairs {3,9} and {8,64}.
ExceptionSetTag classify_pair(const Integer& a, const Integer& b);

/// All hits for 2 <= a < b <= bmax, a <= amax, n <= nmax, sorted by (a, b, n).
std::vector<SearchHit> scan(std::uint64_t amax, std::uint64_t bmax, std::uint64_t nmax);

/// One "a b n x" line per hit.
std::string format_hits(const std::vector<SearchHit>& hits);

struct Theorem1Report {
  std::uint64_t n_max = 0;
  std::uint64_t bmax = 0;
  std::size_t pairs = 0;
  std::size_t exceptional_pairs = 0;          // tagged A1, A2 or A3
  std::vector<SearchHit> hits;                // every hit, all pairs
  std::vector<SearchHit> trivial;             // untagged pairs, n = 1
  std::vector<SearchHit> counterexamples;     // untagged pairs, n >= 2, not n = 2, not (2,4) at n = 3

  bool holds() const { return counterexamples.empty(); }
};

/// Checks every untagged pair with 2 <= a < b <= bmax for solutions with
/// exponent k >= 2: these must have k = 2, or be (2,4) at k = 3.
Theorem1Report verify_theorem_1(std::uint64_t n_max = 30, std::uint64_t bmax = 100);

struct ReplayLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct ReplayReport {
  std::vector<ReplayLine> lines;
  bool passed() const;
};

/// The seven solved pairs end to end (prove, then verify), plus fixed
/// congruence facts about them.
ReplayReport replay_solved_pairs();

std::string format_replay(const ReplayReport& report);

/// Non-negative (x, y) with x^3 = 2y^2 - 1 and y <= y_max.
std::vector<std::pair<Integer, Integer>> cubic_scan(std::uint64_t y_max);

struct GateViolation {
  Integer a, b;
  GateKind kind;
  std::uint64_t n;
  Integer x;
};

struct GateConsistencyReport {
  std::size_t pairs_checked = 0;
  std::size_t gates_fired = 0;
  std::vector<GateViolation> violations;
};

/// For every pair with an even-n gate, brute force over even n <= n_max:
/// a solution inside an eliminated class must be one of the gate's residual exponents.
GateConsistencyReport gate_consistency(std::uint64_t bmax = 100, std::uint64_t n_max = 20);

}  // namespace dioph
