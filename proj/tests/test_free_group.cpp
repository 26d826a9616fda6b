#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "circle_colim/errors.hpp"
#include "circle_colim/free_group.hpp"

using namespace circle_colim;

namespace {

// Faithful oracle: A = [[1,2],[0,1]] and B = [[1,0],[2,1]] generate a free
// group, and the conjugates A^i B A^-i are free generators of a subgroup.
using Int = boost::multiprecision::cpp_int;
using M2 = std::array<Int, 4>;

M2 mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}
M2 power(M2 base, int e) {
  if (e < 0) {
    base = {base[3], -base[1], -base[2], base[0]};
    e = -e;
  }
  M2 out{1, 0, 0, 1};
  for (int i = 0; i < e; ++i) out = mul(out, base);
  return out;
}
M2 image(const Letter& l) {
  const M2 a{1, 2, 0, 1}, b{1, 0, 2, 1};
  return mul(mul(power(a, l.gen + 1), power(b, l.exp)), power(a, -(l.gen + 1)));
}
M2 image(const Word& w) {
  M2 out{1, 0, 0, 1};
  for (const auto& l : w) out = mul(out, image(l));
  return out;
}

Word positive_word(int n) {
  Word w;
  for (int i = 0; i < n; ++i) w.push_back({i, 1});
  return w;
}

}  // namespace

TEST_CASE("free reduction") {
  const Word w{{0, 1}, {1, 1}, {1, -1}, {0, -1}, {2, 1}};
  CHECK(free_reduce(w) == Word{{2, 1}});
  CHECK(free_reduce(concat(w, inverse(w))).empty());
  CHECK(free_equal(conjugate({{0, 1}}, {{1, 1}}), Word{{0, 1}, {1, 1}, {0, -1}}));
  CHECK_FALSE(free_equal(Word{{0, 1}, {1, 1}}, Word{{1, 1}, {0, 1}}));
  CHECK(image(Word{{0, 1}, {1, 1}}) != image(Word{{1, 1}, {0, 1}}));
}

TEST_CASE("permutation conjugators") {
  SUBCASE("identity permutation") {
    std::vector<std::size_t> id(5);
    std::iota(id.begin(), id.end(), 0);
    for (const auto& w : permutation_conjugators(positive_word(5), id)) CHECK(w.empty());
  }
  SUBCASE("swap of two letters") {
    const auto c = permutation_conjugators(positive_word(2), {1, 0});
    REQUIRE(c.size() == 2);
    CHECK(c[0] == Word{{0, 1}});
    CHECK(c[1].empty());
    CHECK(free_equal(permuted_expansion(positive_word(2), {1, 0}, c), positive_word(2)));
  }
  SUBCASE("random permutations of eight letters") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 200; ++it) {
      const int n = 1 + static_cast<int>(rng() % 8);
      Word word = positive_word(n);
      std::shuffle(word.begin(), word.end(), rng);
      std::vector<std::size_t> sigma(static_cast<std::size_t>(n));
      std::iota(sigma.begin(), sigma.end(), 0);
      std::shuffle(sigma.begin(), sigma.end(), rng);
      const auto c = permutation_conjugators(word, sigma);
      const Word expanded = permuted_expansion(word, sigma, c);
      CHECK(free_equal(expanded, word));
      CHECK(image(expanded) == image(word));
      for (const auto& w : c)
        for (int g = 0; g < n; ++g) CHECK(std::count_if(w.begin(), w.end(), [&](const Letter& l) { return l.gen == g; }) <= 1);
    }
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(permutation_conjugators(positive_word(3), {0, 0, 1}), PreconditionError);
    CHECK_THROWS_AS(permutation_conjugators(Word{{0, 1}, {0, 1}}, {0, 1}), PreconditionError);
    CHECK_THROWS_AS(permutation_conjugators(Word{{0, -1}}, {0}), PreconditionError);
  }
}
