#pragma once

#include <cstddef>
#include <vector>

namespace circle_colim {

/// Generator id raised to ±1.
struct Letter {
  int gen = 0;
  int exp = 1;

  Letter inverse() const { return {gen, -exp}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
/// Cancels adjacent x·x⁻¹ pairs until none remain (the free-group normal form).
Word free_reduce(const Word& w);
bool free_equal(const Word& a, const Word& b);
/// w x w⁻¹.
Word conjugate(const Word& w, const Word& x);

/// Conjugator words w_1..w_n with a_1⋯a_n = ∏ w_i a_{σ(i)} w_i⁻¹ for a
/// positive word of distinct generators. σ is 0-based: sigma[i] is the
/// position of the letter placed i-th. Built recursively: w_1 is the prefix
/// before a_{σ(1)}, then the same on the word with that letter deleted. Each
/// generator occurs at most once in each w_i. Throws PreconditionError if σ is
/// not a permutation or the word is not positive with distinct letters.
std::vector<Word> permutation_conjugators(const Word& word, const std::vector<std::size_t>& sigma);

/// ∏ w_i a_{σ(i)} w_i⁻¹, not reduced.
Word permuted_expansion(const Word& word, const std::vector<std::size_t>& sigma, const std::vector<Word>& conjugators);

}  // namespace circle_colim
