#include "doctest.h"

#include "sofic/error.hpp"
#include "sofic/group.hpp"
#include "test_support.hpp"

using namespace sofic;

namespace {
const std::vector<std::string> kAB{"a", "b"};
Word W(const std::vector<std::string>& g, const char* s) { return parse_word(g, s); }
}  // namespace

TEST_CASE("free reduction") {
  CHECK(W({"a"}, "aA").empty());
  CHECK(W(kAB, "abBA").empty());
  const Word w = W(kAB, "abAbb");
  CHECK(format_word(kAB, w) == "abAbb");
  CHECK(free_reduce(w.letters()) == w);
  CHECK_THROWS_AS(W(kAB, "abc"), ParseError);
}

TEST_CASE("multi-character generator names") {
  const std::vector<std::string> g{"g0", "g1"};
  const Word w = W(g, "g0 g1^-1 g1 g0");
  CHECK(format_word(g, w) == "g0 g0");
}

TEST_CASE("length-lex enumeration") {
  const auto one = enumerate_words(1, 2);
  REQUIRE(one.size() == 4);
  CHECK(format_word({"a"}, one[0]) == "a");
  CHECK(format_word({"a"}, one[1]) == "A");
  CHECK(format_word({"a"}, one[2]) == "aa");
  CHECK(format_word({"a"}, one[3]) == "AA");
  CHECK(enumerate_words(2, 0).empty());
  const auto two = enumerate_words(2, 1);
  REQUIRE(two.size() == 4);
  CHECK(format_word(kAB, two[2]) == "b");
  CHECK(format_word(kAB, two[3]) == "B");
  // 4 + 4*3 + 4*3*3 reduced words
  const auto three = enumerate_words(2, 3);
  CHECK(three.size() == 52);
  CHECK(std::is_sorted(three.begin(), three.end()));
}

TEST_CASE("word evaluation") {
  Rng rng = make_rng(3, 0);
  const SoficApprox theta = testing::random_approx(rng, 7);
  CHECK(evaluate_word(theta, Word{}).is_identity());
  CHECK(evaluate_word(theta, W(kAB, "a")) == theta.image("a"));
  std::vector<Letter> raw{{0, 1}, {0, -1}, {1, 1}};
  CHECK(evaluate_word(theta, free_reduce(raw)) == theta.image("b"));
  // monoid morphism
  const auto words = enumerate_words(2, 3);
  for (int t = 0; t < 100; ++t) {
    const Word& u = words[uniform_below(rng, words.size())];
    const Word& v = words[uniform_below(rng, words.size())];
    CHECK(evaluate_word(theta, u * v) == compose(evaluate_word(theta, u), evaluate_word(theta, v)));
  }
}

TEST_CASE("relator defect") {
  auto z5 = cyclic_shift_approx(5);
  CHECK(z5.with_relators(std::vector<Word>{W({"a"}, "aaaaa")}).dimension() == 5);
  CHECK(relator_defect(z5.with_relators(std::vector<Word>{W({"a"}, "aaaaa")})) == 0);
  const SoficApprox t(3, {"a"}, {Perm({1, 0, 2})}, std::vector<Word>{W({"a"}, "a")});
  CHECK(relator_defect(t) == make_rational(4, 3));
  CHECK(relator_defect(t.with_relators(std::vector<Word>{})) == 0);
  CHECK_THROWS_AS(relator_defect(z5), PreconditionError);
}

TEST_CASE("trace profile") {
  const auto tp = trace_profile(cyclic_shift_approx(12), 3);
  CHECK(tp.entries.size() == 6);
  CHECK(tp.score == 0);
  const SoficApprox trivial(4, kAB, {Perm::identity(4), Perm::identity(4)});
  for (const auto& [w, ff] : trace_profile(trivial, 2).entries) CHECK(ff == 1);
  CHECK(trace_profile(cyclic_shift_approx(7), 6).score == 0);
}

TEST_CASE("cyclic shift") {
  CHECK(cyclic_shift_approx(1).image("a").is_identity());
  CHECK(cyclic_shift_approx(3).image("a") == Perm({1, 2, 0}));
}

TEST_CASE("cayley tables validate") {
  for (std::size_t n = 1; n <= 16; ++n) CHECK_NOTHROW(cyclic_group_table(n).validate());
  for (std::size_t n = 2; n <= 8; ++n) CHECK_NOTHROW(dihedral_group_table(n).validate());
  CHECK_NOTHROW(klein_four_table().validate());
  CHECK_NOTHROW(quaternion_table().validate());
  CayleyTable bad = cyclic_group_table(3);
  bad.table[1][1] = 1;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  // quaternion is nonabelian with a unique involution
  const auto q = quaternion_table();
  CHECK(q.product(1, 2) != q.product(2, 1));
  int involutions = 0;
  for (Point x = 0; x < 8; ++x) involutions += x != q.identity && q.product(x, x) == q.identity;
  CHECK(involutions == 1);
}

TEST_CASE("regular actions") {
  const auto left = regular_action(cyclic_group_table(3), Side::left);
  CHECK(left.image("g1") == Perm({1, 2, 0}));
  const auto triv = regular_action(cyclic_group_table(1), Side::left);
  CHECK(triv.image("g0").is_identity());

  for (const CayleyTable& k : {dihedral_group_table(4), quaternion_table(), cyclic_group_table(10)}) {
    const auto l = regular_action(k, Side::left), r = regular_action(k, Side::right);
    for (const Perm& a : l.images())
      for (const Perm& b : r.images()) CHECK(hs_dist_sq(compose(a, b), compose(b, a)) == 0);
    // right action is a homomorphism
    for (Point g = 0; g < k.order; ++g)
      for (Point h = 0; h < k.order; ++h)
        CHECK(compose(r.image(g), r.image(h)) == r.image(k.product(g, h)));
    // free action
    for (Point g = 0; g < k.order; ++g)
      CHECK(fixed_fraction(l.image(g)) == (g == k.identity ? Rational(1) : Rational(0)));
  }
}

TEST_CASE("coset actions") {
  const auto z6 = cyclic_group_table(6);
  const auto c = coset_action(z6, {0, 3});
  CHECK(c.dimension() == 3);
  CHECK(cycle_type(c.image("g1")).lengths == std::vector<std::size_t>{3});
  CHECK(c.image("g1") == Perm({1, 2, 0}));
  const auto whole = coset_action(z6, {0, 1, 2, 3, 4, 5});
  CHECK(whole.dimension() == 1);
  CHECK(coset_action(dihedral_group_table(4), {0}) == regular_action(dihedral_group_table(4), Side::left));
  CHECK_THROWS_AS(coset_action(z6, {0, 1}), PreconditionError);
  CHECK_THROWS_AS(coset_action(z6, {1}), PreconditionError);

  // normal subgroup of prime index in an abelian group: p-cycles
  const auto z15 = cyclic_group_table(15);
  const auto idx5 = coset_action(z15, {0, 5, 10});
  for (Point g = 0; g < 15; ++g) {
    const auto ct = cycle_type(idx5.image(g)).lengths;
    if (g % 5 == 0) continue;
    for (auto len : ct) CHECK(len == 5);
  }
}
