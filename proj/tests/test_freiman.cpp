#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "cayleyfp/errors.hpp"
#include "cayleyfp/freiman.hpp"
#include "cayleyfp/rng.hpp"
#include "cayleyfp/znset.hpp"

using namespace cayleyfp;

namespace {

ZnSet random_subset(int n, int m, std::uint64_t seed) {
  rng::Stream st(seed);
  ZnSet A(n);
  while (A.size() < m) A.add(static_cast<int>(st.below(n)));
  return A;
}

}  // namespace

TEST_CASE("quadruple relations on worked examples") {
  auto r1 = additive_quadruples(ZnSet(101, {0, 1, 2}));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == QuadrupleRelation{0, 2, 1, 1});

  CHECK(additive_quadruples(ZnSet(101, {0, 1, 3})).empty());
  CHECK(additive_quadruples(ZnSet(101, {5})).empty());

  auto r2 = additive_quadruples(ZnSet(101, {0, 1, 2, 3}));
  std::vector<QuadrupleRelation> expect{{0, 2, 1, 1}, {0, 3, 1, 2}, {1, 3, 2, 2}};
  CHECK(r2 == expect);

  // wraparound creates relations that the integer lift does not have
  auto wrap = additive_quadruples(ZnSet(12, {0, 2, 10}));
  REQUIRE(wrap.size() == 1);
  CHECK(wrap[0] == QuadrupleRelation{0, 0, 1, 2});
}

TEST_CASE("quadruple relations for point tuples") {
  std::vector<std::vector<int>> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  auto r = additive_quadruples(square);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == QuadrupleRelation{0, 3, 1, 2});
  CHECK(additive_quadruples({{0, 0}, {1, 0}, {0, 1}}).empty());
  CHECK_THROWS_AS(additive_quadruples(std::vector<std::vector<int>>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(additive_quadruples({{0, 0}, {1}}), std::invalid_argument);
}

TEST_CASE("freiman dimension on worked examples") {
  CHECK(freiman_dimension(ZnSet(101, {0, 1, 2})) == 1);
  CHECK(freiman_dimension(ZnSet(101, {0, 1, 3})) == 2);
  CHECK(freiman_dimension(ZnSet(101, {0, 1})) == 1);
  CHECK(freiman_dimension(ZnSet(101, {0, 1, 2, 3})) == 1);
  CHECK(freiman_dimension(ZnSet(101, {42})) == 1);
  CHECK(freiman_dimension(ZnSet(5, {0, 1, 2, 3, 4})) == 1);
  // Sidon set of size m has dimension m-1
  CHECK(freiman_dimension(ZnSet(1009, {0, 1, 3, 7, 12})) == 4);
  // arithmetic progression has dimension 1
  CHECK(freiman_dimension(ZnSet(101, {0, 5, 10, 15, 20})) == 1);
  // the modulus matters: same residues, different relation lists
  CHECK(freiman_dimension(ZnSet(12, {0, 2, 10})) == 1);
  CHECK(freiman_dimension(ZnSet(101, {0, 2, 10})) == 2);

  CHECK_THROWS_AS(freiman_dimension(ZnSet(101)), std::invalid_argument);
  ZnSet big(200);
  for (int i = 0; i < 65; ++i) big.add(i);
  CHECK_THROWS_AS(freiman_dimension(big), refusal_error);
}

TEST_CASE("dimension is invariant under dilation by a unit") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    int m = 2 + static_cast<int>(seed % 5);
    ZnSet A = random_subset(101, m, rng::split(0xD11A, seed));
    for (int c : {5, 34}) {
      ZnSet B(101);
      for (int x : A.elements()) B.add(static_cast<int>((static_cast<long long>(c) * x) % 101));
      REQUIRE(B.size() == A.size());
      CHECK(freiman_dimension(A) == freiman_dimension(B));
    }
  }
}

TEST_CASE("embedding-search oracle on worked examples") {
  CHECK(freiman_dimension_oracle(ZnSet(101, {0, 1, 2})) == 1);
  CHECK(freiman_dimension_oracle(ZnSet(101, {0, 1, 3})) == 2);
  CHECK(freiman_dimension_oracle(ZnSet(101, {0, 1, 2, 3})) == 1);
  CHECK(freiman_dimension_oracle(ZnSet(101, {0, 1, 3, 7})) == 3);
  CHECK(freiman_dimension_oracle(ZnSet(101, {7})) == 1);
  CHECK(freiman_dimension_oracle(ZnSet(101, {0, 1, 2, 3, 4})) == 1);
  CHECK(freiman_dimension_oracle(ZnSet(101, {0, 2, 4, 6, 8})) == 1);
  // forced 1-d realization {0,c,2c,3c,5c} exceeds the default box; the
  // dimension floor still gives the right answer
  CHECK(freiman_dimension_oracle(ZnSet(101, {0, 1, 2, 3, 5})) == 1);
  CHECK(freiman_dimension_oracle(ZnSet(101, {0, 1, 2, 3, 5}), 5) == 1);

  ZnSet seven(101);
  for (int i = 0; i < 7; ++i) seven.add(i);
  CHECK_THROWS_AS(freiman_dimension_oracle(seven), refusal_error);
  CHECK_THROWS_AS(freiman_dimension_oracle(ZnSet(101, {0, 1}), 0), std::invalid_argument);
}

TEST_CASE("oracle agrees with the rank formula on random small sets") {
  int agreements = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    int m = 1 + static_cast<int>(seed % 5);
    ZnSet A = random_subset(101, m, rng::split(0x0AC1E, seed));
    CHECK(freiman_dimension_oracle(A) == freiman_dimension(A));
    ++agreements;
  }
  CHECK(agreements == 60);
}

TEST_CASE("doubling bound on the dimension") {
  Observation2Result a = check_observation2(ZnSet(7, {0, 1, 2}));
  CHECK(a.sigma == Rational(5, 3));
  CHECK(a.k_bound == Rational(10, 3));
  CHECK(a.dim == 1);
  CHECK(a.ok);

  Observation2Result b = check_observation2(ZnSet(5, {0, 1, 2, 3, 4}));
  CHECK(b.sigma == Rational(1, 1));
  CHECK(b.dim == 1);
  CHECK(b.ok);

  Observation2Result c = check_observation2(ZnSet(101, {0, 1, 3}));
  CHECK(c.sigma == Rational(2, 1));
  CHECK(c.dim == 2);
  CHECK(c.ok);
}

TEST_CASE("robustness predicate on worked examples") {
  CHECK(is_freiman_robust(ZnSet(101, {0, 1, 2, 3}), {0.3, 0.5}));
  // epsilon too small to allow any proper subset: trivially robust
  CHECK(is_freiman_robust(ZnSet(101, {0, 1, 2, 3}), {0.2, 0.5}));
  // Sidon 4-set: 3-subsets drop dimension 3 -> 2, below (1-0.1)*3
  CHECK_FALSE(is_freiman_robust(ZnSet(101, {0, 1, 3, 7}), {0.25, 0.1}));

  CHECK_THROWS_AS(is_freiman_robust(ZnSet(101, {0, 1}), {0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(is_freiman_robust(ZnSet(101, {0, 1}), {0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(is_freiman_robust(ZnSet(101), {0.5, 0.5}), std::invalid_argument);

  ZnSet wide(101);
  for (int i = 0; i < 30; ++i) wide.add(i);
  CHECK_THROWS_AS(is_freiman_robust(wide, {0.5, 0.5}), refusal_error);
}
