#include "dioph/lucas.hpp"

#include <stdexcept>

namespace dioph {

namespace {

// Walks the bits of n from the top, keeping (U_k, U_{k+1}):
//   U_{2k}   = U_k (2 U_{k+1} - P U_k)
//   U_{2k+1} = U_{k+1}^2 + Q U_k^2
//   U_{2k+2} = P U_{2k+1} + Q U_{2k}
// `reduce` is applied after every step (identity for exact arithmetic).
template <class Reduce>
std::pair<Integer, Integer> u_ladder(const Integer& P, const Integer& Q, const Integer& n, Reduce reduce) {
  Integer uk = 0;
  Integer uk1 = reduce(Integer(1));
  if (sgn(n) == 0) return {uk, uk1};
  for (auto bit = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
    Integer even = reduce(uk * (2 * uk1 - P * uk));
    Integer odd = reduce(uk1 * uk1 + Q * uk * uk);
    if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      uk1 = reduce(P * odd + Q * even);
      uk = std::move(odd);
    } else {
      uk = std::move(even);
      uk1 = std::move(odd);
    }
  }
  return {uk, uk1};
}

}  // namespace

LucasParams::LucasParams(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {
  if (sgn(p_) == 0 || sgn(q_) == 0) throw std::invalid_argument("Lucas parameters must be nonzero");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
  if (g != 1) throw std::invalid_argument("Lucas parameters must be coprime");
  if (sgn(discriminant()) <= 0) throw std::invalid_argument("Lucas discriminant P^2 + 4Q must be positive");
}

LucasPair lucas_uv(const LucasParams& params, std::uint64_t n) {
  auto [u, u1] = u_ladder(params.P(), params.Q(), from_u64(n), [](Integer x) { return x; });
  Integer v = 2 * u1 - params.P() * u;
  return {n, std::move(u), std::move(v)};
}

std::pair<Integer, Integer> lucas_uv_mod(const LucasParams& params, const Integer& n, const Integer& m) {
  if (m < 2) throw std::domain_error("lucas_uv_mod: modulus must be >= 2");
  if (sgn(n) < 0) throw std::domain_error("lucas_uv_mod: negative index");
  auto reduce = [&m](Integer x) {
    x %= m;
    if (sgn(x) < 0) x += m;
    return x;
  };
  auto [u, u1] = u_ladder(params.P(), params.Q(), n, reduce);
  Integer v = reduce(2 * u1 - params.P() * u);
  return {std::move(u), std::move(v)};
}

LucasStream::LucasStream(const LucasParams& params, std::uint64_t n_max)
    : params_(params), n_max_(n_max), u_prev_(0), u_(0), v_prev_(0), v_(2) {}

std::optional<LucasPair> LucasStream::next() {
  if (done_) return std::nullopt;
  LucasPair out{n_, u_, v_};
  if (n_ == n_max_) {
    done_ = true;
    return out;
  }
  if (n_ == 0) {
    u_prev_ = u_;
    v_prev_ = v_;
    u_ = 1;
    v_ = params_.P();
  } else {
    Integer u_next = params_.P() * u_ + params_.Q() * u_prev_;
    Integer v_next = params_.P() * v_ + params_.Q() * v_prev_;
    u_prev_ = std::move(u_);
    v_prev_ = std::move(v_);
    u_ = std::move(u_next);
    v_ = std::move(v_next);
  }
  ++n_;
  return out;
}

}  // namespace dioph
