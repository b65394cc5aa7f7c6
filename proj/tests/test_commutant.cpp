#include "doctest.h"

#include "sofic/commutant.hpp"
#include "sofic/convex.hpp"
#include "sofic/error.hpp"
#include "test_support.hpp"

using namespace sofic;

namespace {
std::set<std::vector<Point>> as_set(const std::vector<Perm>& v) {
  std::set<std::vector<Point>> out;
  for (const Perm& p : v) out.emplace(p.images().begin(), p.images().end());
  return out;
}
}  // namespace

TEST_CASE("centralizer of the trivial action is the symmetric group") {
  const SoficApprox trivial(5, {"a"}, {Perm::identity(5)});
  const auto c = centralizer_exact(trivial);
  CHECK(c.order() == 120);
  CHECK(as_set(c.elements(1000)).size() == 120);
  const SoficApprox big(3000, {"a"}, {Perm::identity(3000)});
  const auto cb = centralizer_exact(big);
  CHECK(cb.order().str().size() > 9000);  // 3000! without enumeration
  CHECK(ergodicity_certificate(big).verdict == Verdict::transitive);
}

TEST_CASE("centralizer of an N-cycle is the cyclic group it generates") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto z = cyclic_shift_approx(n);
    const auto c = centralizer_exact(z);
    CHECK(c.order() == n);
    std::vector<Perm> powers;
    for (std::size_t k = 0; k < n; ++k) powers.push_back(power(z.image("a"), static_cast<long long>(k)));
    CHECK(as_set(c.elements(100)) == as_set(powers));
    CHECK(as_set(c.elements(100)) == testing::brute_force_centralizer(z));
  }
}

TEST_CASE("centralizer of the left regular action is the right regular image") {
  for (const CayleyTable& k : {dihedral_group_table(3), quaternion_table(), cyclic_group_table(7)}) {
    const auto left = regular_action(k, Side::left), right = regular_action(k, Side::right);
    const auto c = centralizer_exact(left);
    CHECK(c.order() == k.order);
    CHECK(as_set(c.elements(100)) == as_set(right.images()));
  }
}

TEST_CASE("centralizer matches brute force on random inputs") {
  Rng rng = make_rng(30, 0);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 1 + uniform_below(rng, 6);
    SoficApprox theta = testing::random_approx(rng, n, 1 + uniform_below(rng, 2));
    const auto c = centralizer_exact(theta);
    const auto elems = c.elements(10000);
    CHECK(as_set(elems) == testing::brute_force_centralizer(theta));
    CHECK(Integer(elems.size()) == c.order());
    for (const Perm& p : elems) CHECK(commutes_with_all(p, theta.images()));
  }
}

TEST_CASE("adding a generator never enlarges the centralizer") {
  Rng rng = make_rng(31, 0);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 2 + uniform_below(rng, 5);
    const SoficApprox one(n, {"a"}, {testing::random_perm(rng, n)});
    const SoficApprox two(n, {"a", "b"}, {one.image("a"), testing::random_perm(rng, n)});
    const auto small = as_set(centralizer_exact(two).elements(100000));
    const auto large = as_set(centralizer_exact(one).elements(100000));
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("ergodicity certificates") {
  const auto left = regular_action(cyclic_group_table(8), Side::left);
  auto cert = ergodicity_certificate(left);
  CHECK(cert.verdict == Verdict::transitive);
  CHECK(cert.order == 8);
  CHECK(verify_certificate(left, cert));

  const SoficApprox trivial(4, {"a"}, {Perm::identity(4)});
  CHECK(ergodicity_certificate(trivial).verdict == Verdict::transitive);

  const auto sum = direct_sum_approx(cyclic_shift_approx(3), SoficApprox(2, {"a"}, {Perm::identity(2)}));
  cert = ergodicity_certificate(sum);
  CHECK(cert.verdict == Verdict::split);
  REQUIRE(cert.invariant);
  CHECK(cert.invariant->points() == std::vector<Point>{0, 1, 2});
  CHECK(verify_certificate(sum, cert));

  // a tampered certificate fails
  auto bad = cert;
  bad.invariant = Subset(5, {0, 3});
  CHECK_FALSE(verify_certificate(sum, bad));
}

TEST_CASE("split detection on direct sums") {
  Rng rng = make_rng(32, 0);
  for (int t = 0; t < 10; ++t) {
    const auto a = cyclic_shift_approx(2 + uniform_below(rng, 4));
    const auto b = cyclic_shift_approx(6 + uniform_below(rng, 3));
    const auto sum = direct_sum_approx(a, b);
    const auto cert = ergodicity_certificate(sum);
    CHECK(cert.verdict == Verdict::split);
    CHECK(verify_certificate(sum, cert));
  }
  // two isomorphic blocks with regular actions stay transitive
  const auto twice = direct_sum_approx(cyclic_shift_approx(4), cyclic_shift_approx(4));
  CHECK(ergodicity_certificate(twice).verdict == Verdict::transitive);
}

TEST_CASE("approximate commutant search") {
  const auto z = cyclic_shift_approx(7);
  const auto found = approx_commutant_search(z, 0, 1, 5000);
  bool has_shift = false;
  for (const auto& f : found) {
    CHECK(f.defect == 0);
    CHECK(commutes_with_all(f.sigma, z.images()));
    has_shift |= f.sigma == z.image("a");
  }
  CHECK(has_shift);

  const auto left = regular_action(dihedral_group_table(4), Side::left);
  const auto exact = as_set(centralizer_exact(left).elements(100));
  for (const auto& f : approx_commutant_search(left, 0, 2, 5000))
    CHECK(exact.count(std::vector<Point>(f.sigma.images().begin(), f.sigma.images().end())) == 1);

  const auto loose = approx_commutant_search(cyclic_shift_approx(6), make_rational(1, 1), 3, 2000);
  for (const auto& f : loose) CHECK(f.defect <= 1);
}

TEST_CASE("mixing statistic") {
  const std::size_t n = 10;
  const auto z = regular_action(cyclic_group_table(n), Side::left);
  const Subset y(n, {0, 1, 2}), zset(n, {5, 6, 7, 8});
  const auto m = mixing_statistic(z, y, zset);
  CHECK(m.value == make_rational(3, 10));
  CHECK(m.min_measure == make_rational(3, 10));
  CHECK(m.exhaustive);
  CHECK(mixing_statistic(z, Subset(n, {}), zset).value == 0);

  const auto c = centralizer_exact(z).elements(100);
  const Subset target = y.image(c[3]);
  CHECK(mixing_statistic(z, y, target).value == y.measure());
}
