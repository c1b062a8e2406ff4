#include "dioph/pell.hpp"

#include "dioph/lucas.hpp"

#include <stdexcept>

namespace dioph {

PellFundamental pell_fundamental(const Integer& d) {
  if (d < 2 || is_perfect_square(d)) throw std::domain_error("no Pell structure");

  const Integer a0 = isqrt(d);
  Integer m = 0, q = 1, a = a0;
  // convergents h/k; (h_prev, k_prev) starts at (1, 0)
  Integer h_prev = 1, h = a0;
  Integer k_prev = 0, k = 1;
  std::size_t period = 0;
  while (true) {
    m = q * a - m;
    q = (d - m * m) / q;
    a = (a0 + m) / q;
    ++period;
    if (a == 2 * a0) break;
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(h_next);
    k = std::move(k_next);
  }

  PellFundamental f{d, h, k};
  if (period % 2 == 1) {
    // h^2 - d k^2 = -1 here; square it once.
    f.x1 = h * h + d * k * k;
    f.y1 = 2 * h * k;
  }
  if (f.x1 * f.x1 - d * f.y1 * f.y1 != 1) throw std::logic_error("pell_fundamental: norm check failed");
  return f;
}

std::vector<IntegerPoint> pell_solutions(const PellFundamental& f, std::size_t count) {
  const LucasParams params(2 * f.x1, -1);
  std::vector<IntegerPoint> out;
  out.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    auto uv = lucas_uv(params, n);
    Integer x = uv.V / 2;
    Integer y = f.y1 * uv.U;
    if (x * x - f.d * y * y != 1) throw std::logic_error("pell_solutions: emitted pair is not a solution");
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

std::optional<MinimalHypSolution> minimal_hyp_solution(const Integer& a, const Integer& b) {
  if (a < 2 || is_perfect_square(a)) throw std::domain_error("hyperbolic form requires a non-square a >= 2");
  if (b < 1) throw std::domain_error("minimal_hyp_solution: b must be positive");

  const Integer d = a * b;
  // ab square: (ax - cy)(ax + cy) = a with c^2 = ab leaves no positive solution.
  if (is_perfect_square(d)) return std::nullopt;

  const auto unit = pell_fundamental(d);
  const Integer up = unit.x1 + 1, vp = unit.x1 - 1;
  if (up % (2 * a) != 0 || vp % (2 * b) != 0) return std::nullopt;
  const auto u1 = is_perfect_square(up / (2 * a));
  const auto v1 = is_perfect_square(vp / (2 * b));
  if (!u1 || !v1 || sgn(*v1) == 0) return std::nullopt;
  if (a * *u1 * *u1 - b * *v1 * *v1 != 1 || 2 * *u1 * *v1 != unit.y1) return std::nullopt;
  return MinimalHypSolution{a, b, *u1, *v1, 4 * a * *u1 * *u1 - 2};
}

std::vector<IntegerPoint> hyp_solutions(const MinimalHypSolution& m, std::size_t count) {
  const LucasParams params(m.P, -1);
  std::vector<IntegerPoint> out;
  out.reserve(count);
  LucasStream stream(params, count);
  auto prev = stream.next();
  for (std::size_t n = 0; n < count; ++n) {
    auto cur = stream.next();
    Integer x = m.u1 * (cur->U - prev->U);
    Integer y = m.v1 * (cur->U + prev->U);
    if (m.a * x * x - m.b * y * y != 1) throw std::logic_error("hyp_solutions: emitted pair is not a solution");
    out.emplace_back(std::move(x), std::move(y));
    prev = std::move(cur);
  }
  return out;
}

}  // namespace dioph
