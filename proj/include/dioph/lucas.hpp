#pragma once

// Lucas sequences under the recurrence X(n+1) = P X(n) + Q X(n-1),
// with U(0) = 0, U(1) = 1, V(0) = 2, V(1) = P. The characteristic roots are
// (P +- sqrt(D)) / 2 with D = P^2 + 4Q.

#include "dioph/arith.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace dioph {

class LucasParams {
 public:
  /// Throws std::invalid_argument unless P, Q are nonzero, coprime and D > 0.
  LucasParams(Integer p, Integer q);

  const Integer& P() const { return p_; }
  const Integer& Q() const { return q_; }
  Integer discriminant() const { return p_ * p_ + 4 * q_; }

 private:
  Integer p_;
  Integer q_;
};

struct LucasPair {
  std::uint64_t n = 0;
  Integer U;
  Integer V;
};

/// Exact U_n, V_n by a division-free doubling ladder on (U_k, U_{k+1}).
LucasPair lucas_uv(const LucasParams& params, std::uint64_t n);

/// (U_n mod m, V_n mod m), both in [0, m). The index may be arbitrarily large.
std::pair<Integer, Integer> lucas_uv_mod(const LucasParams& params, const Integer& n, const Integer& m);

/// Yields (n, U_n, V_n) for n = 0..n_max by the linear recurrence. Single consumer.
class LucasStream {
 public:
  LucasStream(const LucasParams& params, std::uint64_t n_max);

  std::optional<LucasPair> next();

 private:
  LucasParams params_;
  std::uint64_t n_max_;
  std::uint64_t n_ = 0;
  bool done_ = false;
  Integer u_prev_, u_, v_prev_, v_;
};

}  // namespace dioph
