#pragma once

#include <cstddef>
#include <random>

#include "circle_colim/cocycles.hpp"
#include "circle_colim/colimit_words.hpp"
#include "circle_colim/diffeo.hpp"
#include "circle_colim/loops.hpp"

namespace circle_colim::fixtures {

/// Lift t + Σ_{j≤4} a_j sin(j t + φ_j)/j² rescaled to sup displacement
/// `displacement` (resampled until monotone).
CircleDiffeo random_diffeo(std::size_t n, double displacement, std::mt19937_64& rng);

/// exp of a random trigonometric su(n) loop with modes |m| ≤ 3, scaled so
/// the largest eigenvalue angle is `radius`.
Loop random_chart_loop(GroupDescriptor group, std::size_t n, double radius, std::mt19937_64& rng);

ComplexField random_field(int max_mode, std::mt19937_64& rng);
LieModes random_lie_modes(GroupDescriptor group, int max_mode, std::mt19937_64& rng);

/// Uniform five-interval cover with d = 0.1 and a random offset.
Cover random_cover(std::mt19937_64& rng, std::size_t intervals = 5, double d = 0.1);

/// fac(a)·fac(b)·fac(ab)⁻¹ over the presentation's cover, cyclically
/// rotated and shuffled by commuting letters from non-adjacent intervals.
/// Generators and elements are appended to `p`, whose store must match.
Word loop_relation(Presentation& p, const Loop& a, const Loop& b, std::mt19937_64& rng);
Word diffeo_relation(Presentation& p, const CircleDiffeo& a, const CircleDiffeo& b, std::mt19937_64& rng);

/// Copy of an identity word with one letter replaced by a generator of an
/// unrelated element from the same store, or deleted.
Word corrupt_relation(Presentation& p, const Word& w, std::mt19937_64& rng);

}  // namespace circle_colim::fixtures
