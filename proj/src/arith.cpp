#include "dioph/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace dioph {

namespace {

constexpr std::uint64_t kMaxResidueTable = 100'000'000;

void require_modulus(const Integer& m, const char* what) {
  if (m < 2) throw std::domain_error(std::string(what) + ": modulus must be >= 2");
}

}  // namespace

Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  Integer v;
  const std::string s(text.front() == '+' ? text.substr(1) : text);
  if (v.set_str(s, 10) != 0) throw std::invalid_argument("not a decimal integer: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t out = 0;
  if (!fits_u64(parse_integer(text), out))
    throw std::invalid_argument("value out of 64-bit range: '" + std::string(text) + "'");
  return out;
}

bool fits_u64(const Integer& v, std::uint64_t& out) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) return false;
  out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return true;
}

Integer from_u64(std::uint64_t v) {
  Integer r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

std::uint64_t nu2(const Integer& m) {
  if (sgn(m) == 0) throw std::domain_error("valuation undefined");
  return mpz_scan1(m.get_mpz_t(), 0);
}

int jacobi(const Integer& a, const Integer& n) {
  if (sgn(n) <= 0 || mpz_even_p(n.get_mpz_t()))
    throw std::domain_error("jacobi: modulus must be odd and positive");
  Integer x = a % n;
  if (sgn(x) < 0) x += n;
  Integer y = n;
  int t = 1;
  while (sgn(x) != 0) {
    const auto s = mpz_scan1(x.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), s);
    const unsigned long y8 = mpz_fdiv_ui(y.get_mpz_t(), 8);
    // (2/y) = -1 iff y = 3, 5 (mod 8)
    if ((s & 1) && (y8 == 3 || y8 == 5)) t = -t;
    // quadratic reciprocity for odd x, y
    if (mpz_fdiv_ui(x.get_mpz_t(), 4) == 3 && y8 % 4 == 3) t = -t;
    std::swap(x, y);
    x %= y;
  }
  return y == 1 ? t : 0;
}

Integer isqrt(const Integer& m) {
  if (sgn(m) < 0) throw std::domain_error("isqrt of negative value");
  if (sgn(m) == 0) return 0;
  // 2^ceil(bits/2) >= sqrt(m), so the iteration decreases monotonically.
  Integer x;
  mpz_setbit(x.get_mpz_t(), (mpz_sizeinbase(m.get_mpz_t(), 2) + 1) / 2);
  while (true) {
    Integer y = (x + m / x) / 2;
    if (y >= x) return x;
    x = std::move(y);
  }
}

std::optional<Integer> is_perfect_square(const Integer& m) {
  if (sgn(m) < 0) return std::nullopt;
  Integer r = isqrt(m);
  if (r * r != m) return std::nullopt;
  return r;
}

Integer mod_pow(const Integer& a, const Integer& e, const Integer& m) {
  require_modulus(m, "mod_pow");
  if (sgn(e) < 0) throw std::domain_error("mod_pow: negative exponent");
  Integer base = a % m;
  if (sgn(base) < 0) base += m;
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t q = a / gcd_u64(a, b);
  unsigned __int128 r = static_cast<unsigned __int128>(q) * b;
  if (r >> 64) throw std::overflow_error("lcm exceeds 64 bits");
  return static_cast<std::uint64_t>(r);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

unsigned ceil_log2(std::uint64_t m) {
  unsigned k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < m) ++k;
  return k;
}

std::uint64_t carmichael(std::uint64_t m) {
  if (m == 0) throw std::domain_error("carmichael of 0");
  std::uint64_t lambda = 1;
  for (auto [p, e] : factor_small(m)) {
    std::uint64_t part;
    if (p == 2) {
      part = e == 1 ? 1 : e == 2 ? 2 : std::uint64_t{1} << (e - 2);
    } else {
      part = p - 1;
      for (unsigned i = 1; i < e; ++i) part *= p;
    }
    lambda = lcm_u64(lambda, part);
  }
  return lambda;
}

std::optional<std::uint64_t> multiplicative_order(const Integer& a, const Integer& m,
                                                  std::uint64_t factor_bound) {
  require_modulus(m, "multiplicative_order");
  std::uint64_t mod = 0;
  if (!fits_u64(m, mod) || mod > factor_bound)
    throw std::domain_error("multiplicative_order: modulus above factoring bound");
  Integer r = a % m;
  if (sgn(r) < 0) r += m;
  const std::uint64_t base = r.get_ui();
  if (gcd_u64(base, mod) != 1) return std::nullopt;

  std::uint64_t t = carmichael(mod);
  for (auto [q, e] : factor_small(t)) {
    for (unsigned i = 0; i < e; ++i) {
      if (powmod_u64(base, t / q, mod) != 1) break;
      t /= q;
    }
  }
  return t;
}

Integer geometric_sum_mod(const Integer& a, const Integer& n, const Integer& m) {
  require_modulus(m, "geometric_sum_mod");
  if (sgn(n) < 0) throw std::domain_error("geometric_sum_mod: negative length");
  Integer base = a % m;
  if (sgn(base) < 0) base += m;
  Integer sum = 0;    // S(k)
  Integer power = 1;  // a^k
  for (auto bit = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    sum = sum * (power + 1) % m;
    power = power * power % m;
    if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      sum = (sum * base + 1) % m;
      power = power * base % m;
    }
  }
  return sum;
}

std::vector<bool> square_residue_mask(std::uint64_t m) {
  if (m < 2) throw std::domain_error("square_residues_mod: modulus must be >= 2");
  if (m > kMaxResidueTable) throw std::domain_error("square_residues_mod: modulus too large to tabulate");
  std::vector<bool> mask(m, false);
  for (std::uint64_t x = 0; x <= m / 2; ++x) mask[mulmod_u64(x, x, m)] = true;
  return mask;
}

std::vector<std::uint64_t> square_residues_mod(std::uint64_t m) {
  const auto mask = square_residue_mask(m);
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 0; v < m; ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

}  // namespace dioph
