#include <random>

#include "doctest.h"
#include "galab/error.hpp"
#include "galab/group.hpp"
#include "oracles.hpp"

using namespace galab;

namespace {

Element random_free_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(1, rank), sign(0, 1);
  const GroupSpec f = GroupSpec::free(rank);
  Element w = f.identity();
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const std::int64_t l = letter(rng) * (sign(rng) ? 1 : -1);
    w = f.multiply(w, Element{l});
  }
  return w;
}

Element random_lattice(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<std::int64_t> c(-50, 50);
  std::vector<std::int64_t> v(static_cast<std::size_t>(d));
  for (auto& x : v) x = c(rng);
  return Element(v);
}

}  // namespace

TEST_CASE("lattice products and inverses") {
  const GroupSpec z2 = GroupSpec::lattice(2);
  CHECK(z2.multiply({1, 2}, {3, -1}) == Element{4, 1});
  CHECK(z2.inverse({3, -1}) == Element{-3, 1});
  CHECK(z2.identity() == Element{0, 0});
  CHECK_THROWS_AS(z2.multiply({1}, {1, 2}), UsageError);
  CHECK_THROWS_AS(GroupSpec::lattice(0), UsageError);
}

TEST_CASE("free words reduce eagerly") {
  const GroupSpec f2 = GroupSpec::free(2);
  CHECK(f2.multiply({1}, {-1}) == f2.identity());
  CHECK(f2.multiply({1}, {-1}).empty());
  CHECK(f2.inverse({1, -2}) == Element{2, -1});
  CHECK(f2.multiply({1, -2}, {2, 1}) == Element{1, 1});
  CHECK_FALSE(f2.contains({1, -1}));
  CHECK_FALSE(f2.contains({3}));
  CHECK_THROWS_AS(f2.require({2, -2}), UsageError);
}

TEST_CASE("S3 table agrees with permutation composition") {
  const GroupSpec s3 = symmetric_group(3);
  const auto perms = oracle::s3_permutations();
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const int expect = oracle::s3_index(oracle::compose(perms[static_cast<std::size_t>(a)], perms[static_cast<std::size_t>(b)]));
      CHECK(s3.multiply(Element::index(a), Element::index(b)) == Element::index(expect));
    }
  // (12)(23) = (123) in one-based cycle notation.
  const int t12 = oracle::s3_index({1, 0, 2});
  const int t23 = oracle::s3_index({0, 2, 1});
  const int c123 = oracle::s3_index({1, 2, 0});
  CHECK(s3.multiply(Element::index(t12), Element::index(t23)) == Element::index(c123));
}

TEST_CASE("Cayley inverses match a row scan") {
  for (const GroupSpec& g : {symmetric_group(3), dihedral_group(4), quaternion_group(), cyclic_group(12),
                             direct_product(cyclic_group(2), cyclic_group(3))}) {
    const std::size_t n = g.order();
    const auto t = g.table();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) table[i][j] = t[i * n + j];
    for (std::size_t x = 0; x < n; ++x) {
      const int scanned = oracle::inverse_by_row_scan(table, static_cast<int>(g.identity()[0]), static_cast<int>(x));
      CHECK(g.inverse(Element::index(static_cast<std::int64_t>(x))) == Element::index(scanned));
      CHECK(g.inverse_table()[x] == scanned);
    }
  }
}

TEST_CASE("Cayley validation rejects bad tables") {
  CHECK_THROWS_AS(GroupSpec::cayley({{0, 1}, {1, 1}}), UsageError);          // not Latin
  CHECK_THROWS_AS(GroupSpec::cayley({{0, 1}, {1, 0}, {0, 1}}), UsageError);  // not square
  CHECK_THROWS_AS(GroupSpec::cayley({{1, 0}, {0, 1}}, 0), UsageError);       // identity row wrong
  CHECK_THROWS_AS(GroupSpec::cayley({{0, 3}, {1, 0}}), UsageError);          // out of range
  // A Latin square with identity 0 that is not associative (order 5 loop).
  const std::vector<std::vector<int>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(GroupSpec::cayley(loop), UsageError);
  CHECK_NOTHROW(GroupSpec::cayley({{0, 1}, {1, 0}}));
}

TEST_CASE("named group orders") {
  CHECK(dihedral_group(4).order() == 8);
  CHECK(quaternion_group().order() == 8);
  CHECK(symmetric_group(4).order() == 24);
  CHECK(cyclic_group(12).order() == 12);
  const std::vector<std::int64_t> m{2, 3, 4};
  CHECK(cyclic_product_group(m).order() == 24);
}

TEST_CASE("balls") {
  const GroupSpec z = GroupSpec::lattice(1);
  const Window b2 = z.ball(2);
  REQUIRE(b2.size() == 5);
  CHECK(b2[0] == Element{-2});
  CHECK(b2[4] == Element{2});

  const GroupSpec f2 = GroupSpec::free(2);
  CHECK(f2.ball(1).size() == 5);
  CHECK(f2.ball(2).size() == 17);
  for (int r = 0; r <= 5; ++r) {
    CHECK(f2.ball(r).size() == oracle::free_ball_size(2, r));
    CHECK(f2.ball_size(r) == oracle::free_ball_size(2, r));
  }
  CHECK(GroupSpec::lattice(3).ball(2).size() == 125);
  CHECK(symmetric_group(3).ball(1).size() == 6);
  CHECK(symmetric_group(3).ball(0).size() == 1);
  CHECK_THROWS_AS(GroupSpec::lattice(3).ball(200), ResourceError);
  CHECK_THROWS_AS(z.ball(-1), UsageError);
}

TEST_CASE("ball properties: nested, inverse closed, lexicographic") {
  for (const GroupSpec& g : {GroupSpec::lattice(1), GroupSpec::lattice(2), GroupSpec::free(2), GroupSpec::free(3),
                             dihedral_group(3)}) {
    for (int r = 0; r < 4; ++r) {
      const Window small = g.ball(r), big = g.ball(r + 1);
      CHECK(small.contains(g.identity()));
      for (const auto& x : small) {
        CHECK(big.contains(x));
        CHECK(small.contains(g.inverse(x)));
      }
      for (std::size_t i = 1; i < small.size(); ++i) CHECK(small[i - 1] < small[i]);
    }
  }
}

TEST_CASE("windows") {
  const Window w(std::vector<Element>{{3}, {1}, {2}});
  CHECK(w[0] == Element{3});
  CHECK(*w.index_of({2}) == 2);
  CHECK_FALSE(w.index_of({7}).has_value());
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(*w.index_of(w[i]) == i);
  CHECK_THROWS_AS(Window(std::vector<Element>{{1}, {1}}), UsageError);
  const Window s = Window::sorted({{3}, {1}, {3}});
  CHECK(s.size() == 2);
  CHECK(s[0] == Element{1});
}

TEST_CASE("group laws on random samples") {
  std::mt19937_64 rng(11);
  SUBCASE("lattice") {
    const GroupSpec g = GroupSpec::lattice(3);
    for (int i = 0; i < 1000; ++i) {
      const Element a = random_lattice(rng, 3), b = random_lattice(rng, 3), c = random_lattice(rng, 3);
      CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
      CHECK(g.multiply(a, g.inverse(a)) == g.identity());
      CHECK(g.multiply(g.identity(), a) == a);
    }
  }
  SUBCASE("free") {
    const GroupSpec g = GroupSpec::free(2);
    for (int i = 0; i < 1000; ++i) {
      const Element a = random_free_word(rng, 2, 6), b = random_free_word(rng, 2, 6), c = random_free_word(rng, 2, 6);
      const Element ab = g.multiply(a, b);
      CHECK(g.contains(ab));
      CHECK(g.multiply(ab, c) == g.multiply(a, g.multiply(b, c)));
      CHECK(g.multiply(a, g.inverse(a)) == g.identity());
      CHECK(g.multiply(g.inverse(a), a) == g.identity());
      CHECK(g.multiply(a, g.identity()) == a);
    }
  }
  SUBCASE("cayley") {
    for (const GroupSpec& g : {symmetric_group(4), quaternion_group(), dihedral_group(5)}) {
      std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(g.order()) - 1);
      for (int i = 0; i < 1000; ++i) {
        const Element a = Element::index(d(rng)), b = Element::index(d(rng)), c = Element::index(d(rng));
        CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
        CHECK(g.multiply(a, g.inverse(a)) == g.identity());
        CHECK(g.multiply(g.inverse(a), a) == g.identity());
      }
    }
  }
}

TEST_CASE("quotient maps") {
  const QuotientMap q4({4});
  CHECK(q4.residues({7}) == std::vector<std::int64_t>{3});
  CHECK(q4({7}) == Element::index(3));
  CHECK(q4({-1}) == Element::index(3));
  CHECK(q4.multiply(q4({7}), q4({5})) == q4({12}));

  const QuotientMap q22({2, 2});
  CHECK(q22.residues({3, -1}) == std::vector<std::int64_t>{1, 1});
  CHECK_THROWS_AS(QuotientMap({0}), UsageError);
  CHECK_THROWS_AS(q4({1, 2}), UsageError);

  const QuotientMap q({3, 5});
  for (std::int64_t i = 0; i < 15; ++i) CHECK(q.index_of_residues(q.residues_of_index(i)) == i);

  // Homomorphism on random pairs, and agreement with the target Cayley table.
  std::mt19937_64 rng(5);
  const GroupSpec target = q.target_group();
  const GroupSpec z2 = GroupSpec::lattice(2);
  for (int i = 0; i < 1000; ++i) {
    const Element a = random_lattice(rng, 2), b = random_lattice(rng, 2);
    const Element lhs = q(z2.multiply(a, b));
    CHECK(lhs == q.multiply(q(a), q(b)));
    CHECK(lhs == target.multiply(q(a), q(b)));
  }
}
