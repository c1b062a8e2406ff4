#pragma once

// Exact integer primitives shared by every other module.
//
// Integer is GMP's mpz_class: no fixed-width quantity ever carries a value
// that could overflow. Small moduli (sieve witnesses, residue classes) use
// std::uint64_t with explicit range checks instead.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dioph {

using Integer = mpz_class;

/// Parses an optionally signed decimal string of any length.
/// Throws std::invalid_argument on anything else.
Integer parse_integer(std::string_view text);

/// Like parse_integer, but also requires the value to fit in 64 bits.
std::uint64_t parse_u64(std::string_view text);

inline std::string to_string(const Integer& v) { return v.get_str(10); }

/// True and sets `out` when v is in [0, 2^64).
bool fits_u64(const Integer& v, std::uint64_t& out);
Integer from_u64(std::uint64_t v);

/// Exponent of 2 in m. Throws std::domain_error("valuation undefined") for 0.
std::uint64_t nu2(const Integer& m);

/// Jacobi symbol (a/n) for odd n >= 1, by the binary reciprocity algorithm.
int jacobi(const Integer& a, const Integer& n);

/// floor(sqrt(m)) by Newton's method; m must be non-negative.
Integer isqrt(const Integer& m);

/// x with x*x == m, or empty when m is negative or not a square.
std::optional<Integer> is_perfect_square(const Integer& m);

/// a^e mod m in [0, m); a may be negative. Requires m >= 2.
Integer mod_pow(const Integer& a, const Integer& e, const Integer& m);

/// Prime factorization by trial division. Only used for small moduli.
std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t m);

/// Carmichael's lambda(m) for m >= 1.
std::uint64_t carmichael(std::uint64_t m);

inline constexpr std::uint64_t kDefaultFactorBound = 1'000'000;

/// Least t >= 1 with a^t == 1 (mod m), or empty when gcd(a, m) > 1.
/// Requires 2 <= m <= factor_bound (lambda(m) is factored by trial division);
/// throws std::domain_error otherwise.
std::optional<std::uint64_t> multiplicative_order(const Integer& a, const Integer& m,
                                                  std::uint64_t factor_bound = kDefaultFactorBound);

/// (1 + a + ... + a^(n-1)) mod m, by the doubling recurrence
/// S(2k) = S(k)(1 + a^k), S(k+1) = a S(k) + 1. Never divides by a - 1.
Integer geometric_sum_mod(const Integer& a, const Integer& n, const Integer& m);

/// Sorted { x^2 mod m : 0 <= x < m }.
std::vector<std::uint64_t> square_residues_mod(std::uint64_t m);

/// mask[v] is true iff v is a square modulo m.
std::vector<bool> square_residue_mask(std::uint64_t m);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
/// lcm, throwing std::overflow_error when the result leaves 64 bits.
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// ceil(log2(m)) for m >= 1.
unsigned ceil_log2(std::uint64_t m);

}  // namespace dioph
