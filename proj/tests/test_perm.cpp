#include "doctest.h"

#include "sofic/error.hpp"
#include "sofic/perm.hpp"
#include "test_support.hpp"

using namespace sofic;
using sofic::testing::random_perm;

namespace {
Perm P(std::vector<Point> v) { return Perm(std::move(v)); }
Rational R(long long a, long long b = 1) { return make_rational(a, b); }
}  // namespace

TEST_CASE("perm construction rejects non-bijections") {
  CHECK_THROWS_AS(P({0, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(P({0, 3, 1}), PreconditionError);
  CHECK_THROWS_AS(P({}), PreconditionError);
}

TEST_CASE("perm algebra") {
  const Perm p = P({1, 2, 0});
  CHECK(compose(Perm::identity(3), p) == p);
  CHECK(inverse(p) == P({2, 0, 1}));
  CHECK(compose(p, inverse(p)).is_identity());
  // (p∘q)(x) = p(q(x)): q sends 1→2, p sends 2→2; q sends 2→1, p sends 1→0
  CHECK(compose(P({1, 0, 2}), P({0, 2, 1})) == P({1, 2, 0}));
  CHECK_THROWS_AS(compose(P({0, 1}), P({0, 1, 2})), PreconditionError);
  CHECK(power(p, 3).is_identity());
  CHECK(power(p, -1) == inverse(p));
}

TEST_CASE("fixed fraction") {
  CHECK(fixed_fraction(Perm::identity(5)) == 1);
  CHECK(fixed_fraction(P({1, 2, 3, 4, 0})) == 0);
  CHECK(fixed_fraction(P({1, 0, 2})) == R(1, 3));
}

TEST_CASE("hs distance") {
  const Perm p = P({2, 0, 1});
  CHECK(hs_dist_sq(p, p) == 0);
  CHECK(hs_dist_sq(Perm::identity(2), P({1, 0})) == 2);
  CHECK(hs_dist_sq(P({1, 2, 0}), P({1, 0, 2})) == R(4, 3));
  CHECK_THROWS_AS(hs_dist_sq(P({0}), P({0, 1})), PreconditionError);
}

TEST_CASE("tensor and direct sum") {
  CHECK(tensor(Perm::identity(3), Perm::identity(4)) == Perm::identity(12));
  CHECK(tensor(P({1, 0}), Perm::identity(2)) == P({2, 3, 0, 1}));
  CHECK(direct_sum(Perm::identity(2), Perm::identity(3)) == Perm::identity(5));
  CHECK(direct_sum(P({1, 0}), P({0})) == P({1, 0, 2}));

  Rng rng = make_rng(11, 0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + uniform_below(rng, 9), m = 1 + uniform_below(rng, 9);
    const Perm p = random_perm(rng, n), q = random_perm(rng, m);
    const Rational expected = (Rational(n) * fixed_fraction(p) + Rational(m) * fixed_fraction(q)) / Rational(n + m);
    CHECK(fixed_fraction(direct_sum(p, q)) == expected);
  }
}

TEST_CASE("cycle type") {
  CHECK(cycle_type(Perm::identity(4)).lengths == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(cycle_type(P({1, 2, 3, 0})).lengths == std::vector<std::size_t>{4});
  CHECK(cycle_type(P({1, 0, 3, 2})).lengths == std::vector<std::size_t>{2, 2});
}

TEST_CASE("perm properties on random instances") {
  Rng rng = make_rng(7, 1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + uniform_below(rng, 20);
    const Perm u = random_perm(rng, n), v = random_perm(rng, n), w = random_perm(rng, n);
    // hs identity through the trace
    CHECK(hs_dist_sq(u, v) == 2 * (1 - fixed_fraction(compose(inverse(u), v))));
    // conjugation invariance of cycle type
    CHECK(cycle_type(conjugate(w, u)) == cycle_type(u));
    // triangle inequality for the square root
    const double duv = std::sqrt(to_double(hs_dist_sq(u, v)));
    const double dvw = std::sqrt(to_double(hs_dist_sq(v, w)));
    const double duw = std::sqrt(to_double(hs_dist_sq(u, w)));
    CHECK(duw <= duv + dvw + 1e-12);
    // conjugate definition
    CHECK(compose(conjugate(w, u), w) == compose(w, u));
  }
}
