#include "dioph/pell.hpp"

#include "doctest.h"
#include "pell_oracles.hpp"

#include <random>

using namespace dioph;

namespace {

bool square(long d) {
  long r = 0;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r * r == d;
}

}  // namespace

TEST_CASE("fundamental solutions") {
  auto f = pell_fundamental(3);
  CHECK(f.x1 == 2);
  CHECK(f.y1 == 1);
  f = pell_fundamental(6083);
  CHECK(f.x1 == 78);
  CHECK(f.y1 == 1);
  f = pell_fundamental(61);
  CHECK(f.x1 == Integer("1766319049"));
  CHECK(f.y1 == Integer("226153980"));
  f = pell_fundamental(2);  // odd period, squared convergent
  CHECK(f.x1 == 3);
  CHECK(f.y1 == 2);
  CHECK_THROWS_WITH_AS(pell_fundamental(49), "no Pell structure", std::domain_error);
  CHECK_THROWS_WITH_AS(pell_fundamental(1), "no Pell structure", std::domain_error);
  CHECK_THROWS_AS(pell_fundamental(-5), std::domain_error);
}

TEST_CASE("continued fractions agree with brute force and chakravala for d <= 300") {
  int brute_checked = 0;
  for (long d = 2; d <= 300; ++d) {
    if (square(d)) continue;
    const auto f = pell_fundamental(d);
    REQUIRE(f.x1 * f.x1 - d * f.y1 * f.y1 == 1);
    const auto [cx, cy] = pell_check::chakravala(d);
    CHECK_MESSAGE(f.x1 == cx, "d=" << d);
    CHECK_MESSAGE(f.y1 == cy, "d=" << d);
    if (const auto bf = pell_check::brute_force(d, 10'000)) {
      ++brute_checked;
      CHECK_MESSAGE(f.x1 == bf->first, "d=" << d);
      CHECK_MESSAGE(f.y1 == bf->second, "d=" << d);
    } else {
      CHECK_MESSAGE(f.y1 > 10'000, "d=" << d);
    }
  }
  CHECK(brute_checked > 200);
}

TEST_CASE("solutions from the fundamental one satisfy the equation and increase") {
  for (long d = 2; d <= 100; ++d) {
    if (square(d)) continue;
    const auto f = pell_fundamental(d);
    const auto sols = pell_solutions(f, 8);
    REQUIRE(sols.size() == 8);
    CHECK(sols[0].first == f.x1);
    CHECK(sols[0].second == f.y1);
    // (x1 + y1 sqrt d)^n by direct multiplication
    Integer x = f.x1, y = f.y1;
    for (std::size_t i = 0; i < sols.size(); ++i) {
      CHECK(sols[i].first * sols[i].first - d * sols[i].second * sols[i].second == 1);
      CHECK(sols[i].first == x);
      CHECK(sols[i].second == y);
      if (i > 0) CHECK(sols[i].first > sols[i - 1].first);
      Integer nx = x * f.x1 + d * y * f.y1, ny = x * f.y1 + y * f.x1;
      x = nx;
      y = ny;
    }
  }
}

TEST_CASE("minimal hyperbolic solutions") {
  auto m = minimal_hyp_solution(2, 7);
  REQUIRE(m);
  CHECK(m->u1 == 2);
  CHECK(m->v1 == 1);
  CHECK(m->P == 30);
  m = minimal_hyp_solution(2, 31);
  REQUIRE(m);
  CHECK(m->u1 == 4);
  CHECK(m->v1 == 1);
  CHECK(m->P == 126);
  m = minimal_hyp_solution(3, 2);
  REQUIRE(m);
  CHECK(m->u1 == 1);
  CHECK(m->v1 == 1);
  CHECK_FALSE(minimal_hyp_solution(3, 5));
  CHECK_FALSE(minimal_hyp_solution(2, 8));  // ab = 16 is a square
  CHECK_THROWS_WITH_AS(minimal_hyp_solution(4, 3), "hyperbolic form requires a non-square a >= 2", std::domain_error);
  CHECK_THROWS_AS(minimal_hyp_solution(1, 3), std::domain_error);
  CHECK_THROWS_AS(minimal_hyp_solution(3, 0), std::domain_error);
}

TEST_CASE("closed form agrees with a bounded scan") {
  // Any solution squares to a Pell solution for d = ab, so the minimal u has
  // 2 a u^2 <= x* + 2 where x* is the fundamental x.
  int scanned = 0, solvable = 0;
  for (long a = 2; a <= 40; ++a) {
    if (square(a)) continue;
    for (long b = 1; b <= 40; ++b) {
      if (square(a * b)) {
        CHECK_FALSE(minimal_hyp_solution(a, b));
        continue;
      }
      const Integer xs = pell_fundamental(a * b).x1;
      if (xs > Integer(2) * a * 200'000L * 200'000L) continue;
      ++scanned;
      std::optional<std::pair<long, Integer>> found;
      for (long u = 1; Integer(2) * a * u * u <= xs + 2; ++u) {
        const Integer r = Integer(a) * u * u - 1;
        if (r % b != 0) continue;
        if (auto v = is_perfect_square(r / b); v && *v > 0) {
          found = {u, *v};
          break;
        }
      }
      const auto m = minimal_hyp_solution(a, b);
      REQUIRE_MESSAGE(m.has_value() == found.has_value(), "a=" << a << " b=" << b);
      if (m) {
        ++solvable;
        CHECK(m->u1 == found->first);
        CHECK(m->v1 == found->second);
        CHECK(m->P == 4 * a * m->u1 * m->u1 - 2);
        CHECK(mpz_fdiv_ui(m->P.get_mpz_t(), 4) == 2);
      }
    }
  }
  CHECK(scanned > 500);
  CHECK(solvable > 20);
}

TEST_CASE("hyperbolic solutions from Lucas sequences equal odd powers") {
  const auto sols = hyp_solutions(*minimal_hyp_solution(2, 7), 2);
  CHECK(sols[0] == IntegerPoint{2, 1});
  CHECK(sols[1] == IntegerPoint{58, 31});

  std::mt19937_64 rng(99);
  int instances = 0;
  while (instances < 25) {
    const long a = 2 + static_cast<long>(rng() % 80), b = 1 + static_cast<long>(rng() % 80);
    if (square(a)) continue;
    const auto m = minimal_hyp_solution(a, b);
    if (!m) continue;
    ++instances;
    const auto got = hyp_solutions(*m, 6);
    const auto want = pell_check::odd_powers(a, b, m->u1, m->v1, 6);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].first == want[i].first);
      CHECK(got[i].second == want[i].second);
      CHECK(a * got[i].first * got[i].first - b * got[i].second * got[i].second == 1);
      CHECK(mpz_divisible_p(got[i].first.get_mpz_t(), m->u1.get_mpz_t()));
      CHECK(mpz_divisible_p(got[i].second.get_mpz_t(), m->v1.get_mpz_t()));
    }
  }
}
