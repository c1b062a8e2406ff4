#pragma once

// Nonexistence prover for (a^n - 1)(b^n - 1) = x^2 with fixed 1 < a < b.
//
// Exponents are partitioned into residue classes n = r (mod M). A class is
// eliminated either by a structural gate (a theorem whose hypotheses are
// checked from (a, b)) or by a modular witness: a modulus m for which the
// target value is never a square mod m across the whole class beyond a
// pre-period bound. Exponents up to that bound are tested exactly.

#include "dioph/arith.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dioph {

struct Pair {
  Integer a;
  Integer b;
  Integer g;                   // gcd(a, b)
  bool square_part_ok = false; // (a-1)(b-1) is a perfect square
  Integer s;                   // sqrt((a-1)(b-1)) when square_part_ok

  /// Throws std::invalid_argument unless 1 < a < b.
  static Pair make(const Integer& a, const Integer& b);
};

/// n = r (mod M), 0 <= r < M.
struct ResidueClass {
  std::uint64_t r = 0;
  std::uint64_t M = 1;

  bool contains(std::uint64_t n) const { return n % M == r; }
  /// Every member of `sub` is a member of *this.
  bool contains(const ResidueClass& sub) const { return sub.M % M == 0 && sub.r % M == r; }

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
  friend std::strong_ordering operator<=>(const ResidueClass& x, const ResidueClass& y) {
    if (auto c = x.M <=> y.M; c != 0) return c;
    return x.r <=> y.r;
  }
};

/// Throws std::invalid_argument unless M >= 1 and r < M.
ResidueClass make_class(std::uint64_t r, std::uint64_t M);

enum class TargetForm { Raw, Factored };

struct Witness {
  ResidueClass cls;
  std::uint64_t modulus = 0;
  TargetForm form = TargetForm::Raw;
  std::uint64_t preperiod_bound = 0;  // the witness speaks for n > preperiod_bound
  std::vector<std::uint64_t> values;  // sorted, distinct, none a square mod `modulus`
};

enum class GateKind {
  TheoremT2,        // gcd(a,b) = 1: n = 2 (mod 4) forces n = 2
  TheoremT3,        // nu2(a) != nu2(b), gcd > 1: no even n
  LemmaL0,          // 4 | n forces n = 4 and (a,b) = (13,239)
  TheoremGsq,       // a, b mutually non-dividing, g > 1, g^2 > a or g^2 > b: no even n
  CorollaryDiv,     // a | b, a > b/a: no even n
  TheoremOddOdd,    // a, b odd, g > 1, a/g or b/g = 3 (mod 4): no n = 2 (mod 4)
  Pair250Even,      // (a,b) = (2,50): no even n
  Pair250Descent,   // (a,b) = (2,50): n = 1 (mod 4) forces n = 1
  SquareMultiple,   // b = c^2 a with c even: no n at all
};

struct GateStep {
  GateKind kind = GateKind::LemmaL0;
  std::vector<ResidueClass> classes_eliminated;
  std::vector<std::uint64_t> residual_explicit_n;
  std::string hypothesis_trace;
};

struct ExplicitCheck {
  std::uint64_t n = 0;
  bool solution = false;
  Integer x;  // meaningful only when solution
};

struct KnownSolution {
  std::uint64_t n = 0;
  Integer x;
  friend bool operator==(const KnownSolution&, const KnownSolution&) = default;
};

enum class CertificateStatus { Complete, Partial };

struct Certificate {
  Pair pair;
  std::string claim;
  std::vector<KnownSolution> known_solutions;
  std::vector<GateStep> gate_steps;
  std::vector<Witness> sieve_classes;
  std::vector<ExplicitCheck> exceptional_n;
  std::vector<std::string> assumptions;
  CertificateStatus status = CertificateStatus::Partial;
  std::vector<ResidueClass> surviving_classes;
};

struct SieveConfig {
  std::vector<std::uint64_t> moduli_pool = default_moduli_pool();
  std::vector<std::uint64_t> splitting = {2, 2, 2, 3, 2, 5, 3, 7, 2};
  std::uint64_t max_modulus = 10080;
  std::uint64_t explicit_bound = 50;
  bool structural_gates = true;
  std::uint64_t max_period = std::uint64_t{1} << 20;
  std::uint64_t factor_bound = kDefaultFactorBound;

  /// {8, 16} followed by the odd primes up to 1000.
  static std::vector<std::uint64_t> default_moduli_pool();
};

std::string_view to_string(TargetForm form);
std::string_view to_string(GateKind kind);
std::string_view to_string(CertificateStatus status);
TargetForm parse_target_form(std::string_view s);
GateKind parse_gate_kind(std::string_view s);
CertificateStatus parse_status(std::string_view s);

/// Literature citation recorded for a gate kind.
std::string_view gate_citation(GateKind kind);

/// Even-exponent gates whose hypotheses hold for the pair.
std::vector<GateStep> gate_even(const Pair& pair);

/// Pair-specific gates from the Pell-descent theorems (exact hypothesis shapes only).
std::vector<GateStep> gate_structural(const Pair& pair);

/// RAW: (a^n - 1)(b^n - 1) mod m.
/// FACTORED: (1 + ... + a^(n-1))(1 + ... + b^(n-1)) mod m; requires square_part_ok.
Integer target_value(const Pair& pair, TargetForm form, const Integer& n, const Integer& m);

/// Searches a moduli pool for a witness, caching per-modulus periodicity data.
class WitnessSearch {
 public:
  WitnessSearch(Pair pair, std::vector<std::uint64_t> pool, std::uint64_t preperiod_bound,
                std::uint64_t max_period = std::uint64_t{1} << 20,
                std::uint64_t factor_bound = kDefaultFactorBound);

  /// First modulus in pool order that works. FACTORED is tried before RAW
  /// whenever m shares a factor with sqrt((a-1)(b-1)); otherwise the two forms
  /// differ by a unit square and RAW alone is tried.
  std::optional<Witness> find(const ResidueClass& cls);

  /// Smallest bound covered by every witness this search can return.
  std::uint64_t effective_bound() const;

 private:
  struct Profile {
    bool usable = false;
    std::uint64_t na = 0, nb = 0;   // moduli carrying a^n and b^n
    std::uint64_t am = 0, bm = 0;   // a mod na, b mod nb
    std::uint64_t a1 = 1, b1 = 1;   // a - 1, b - 1 (FACTORED divisors)
    std::uint64_t period = 0;       // eventual period of n -> target mod m
    std::uint64_t bound = 0;        // witness bound for this modulus
  };

  const Profile& profile(std::uint64_t m, TargetForm form);
  std::optional<Witness> try_modulus(const ResidueClass& cls, std::uint64_t m, TargetForm form);
  const std::vector<bool>& residues(std::uint64_t m);

  Pair pair_;
  std::vector<std::uint64_t> pool_;
  std::uint64_t bound_;
  std::uint64_t max_period_;
  std::uint64_t factor_bound_;
  std::map<std::pair<std::uint64_t, int>, Profile> profiles_;
  std::map<std::uint64_t, std::vector<bool>> residues_;
};

std::optional<Witness> find_witness(const Pair& pair, const ResidueClass& cls,
                                    const std::vector<std::uint64_t>& moduli_pool,
                                    std::uint64_t preperiod_bound);

/// Breadth-first covering sieve. Deterministic: identical inputs give identical certificates.
Certificate sieve(const Pair& pair, const SieveConfig& config = {});

/// (a^n - 1)(b^n - 1), exactly.
Integer target_exact(const Integer& a, const Integer& b, std::uint64_t n);

}  // namespace dioph
