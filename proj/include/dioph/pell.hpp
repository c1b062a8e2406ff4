#pragma once

// Pell equation x^2 - d y^2 = 1 and the form a x^2 - b y^2 = 1, with their
// Lucas-sequence parametrizations.

#include "dioph/arith.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace dioph {

/// Fundamental solution of x^2 - d y^2 = 1.
struct PellFundamental {
  Integer d;
  Integer x1;
  Integer y1;
};

/// Minimal positive solution of a x^2 - b y^2 = 1, and P = 4 a u1^2 - 2.
struct MinimalHypSolution {
  Integer a;
  Integer b;
  Integer u1;
  Integer v1;
  Integer P;
};

using IntegerPoint = std::pair<Integer, Integer>;

/// Continued-fraction expansion of sqrt(d) over one period; the last convergent
/// is squared when the period is odd. Throws std::domain_error("no Pell structure")
/// for d < 2 or d a perfect square.
PellFundamental pell_fundamental(const Integer& d);

/// First `count` solutions (x_n, y_n), n = 1..count, as x_n = V_n(2x1,-1)/2 and
/// y_n = y1 U_n(2x1,-1). Each pair is re-checked against the equation.
std::vector<IntegerPoint> pell_solutions(const PellFundamental& f, std::size_t count);

/// Minimal solution of a x^2 - b y^2 = 1, or empty when unsolvable.
/// The square of the minimal solution is the fundamental unit x* + y* sqrt(ab),
/// so u1^2 = (x* + 1) / (2a) and v1^2 = (x* - 1) / (2b) decide it exactly.
/// Throws std::domain_error when a is a perfect square or a < 2, b < 1.
std::optional<MinimalHypSolution> minimal_hyp_solution(const Integer& a, const Integer& b);

/// First `count` solutions for n = 0..count-1:
/// (u1 (U_{n+1} - U_n), v1 (U_{n+1} + U_n)) with U = U(P, -1).
std::vector<IntegerPoint> hyp_solutions(const MinimalHypSolution& m, std::size_t count);

}  // namespace dioph
