#include "circle_colim/free_group.hpp"

#include <algorithm>
#include <set>

#include "circle_colim/errors.hpp"

namespace circle_colim {

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

bool free_equal(const Word& a, const Word& b) { return free_reduce(a) == free_reduce(b); }

Word conjugate(const Word& w, const Word& x) { return concat(concat(w, x), inverse(w)); }

std::vector<Word> permutation_conjugators(const Word& word, const std::vector<std::size_t>& sigma) {
  const std::size_t n = word.size();
  if (sigma.size() != n) throw PreconditionError("permutation length differs from word length");
  std::vector<char> seen(n, 0);
  for (std::size_t s : sigma) {
    if (s >= n || seen[s]) throw PreconditionError("sigma is not a permutation of the word positions");
    seen[s] = 1;
  }
  std::set<int> gens;
  for (const Letter& l : word) {
    if (l.exp != 1) throw PreconditionError("permutation lemma needs a positive word");
    if (!gens.insert(l.gen).second) throw PreconditionError("permutation lemma needs distinct generators");
  }
  // remaining[j] is the original position of the j-th letter still present.
  std::vector<std::size_t> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = j;
  std::vector<Word> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto at = std::find(remaining.begin(), remaining.end(), sigma[i]);
    Word w;
    for (auto it = remaining.begin(); it != at; ++it) w.push_back(word[*it]);
    out.push_back(std::move(w));
    remaining.erase(at);
  }
  return out;
}

Word permuted_expansion(const Word& word, const std::vector<std::size_t>& sigma, const std::vector<Word>& conjugators) {
  Word out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Word& w = conjugators[i];
    out.insert(out.end(), w.begin(), w.end());
    out.push_back(word[sigma[i]]);
    const Word wi = inverse(w);
    out.insert(out.end(), wi.begin(), wi.end());
  }
  return out;
}

}  // namespace circle_colim
