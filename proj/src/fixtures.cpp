#include "circle_colim/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "circle_colim/errors.hpp"

namespace circle_colim::fixtures {

CircleDiffeo random_diffeo(std::size_t n, double displacement, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::array<double, 4> a{}, phase{};
    for (std::size_t j = 0; j < 4; ++j) {
      a[j] = u(rng);
      phase[j] = 3.0 * u(rng);
    }
    const auto raw = [&](double t) {
      double s = 0.0;
      for (std::size_t j = 0; j < 4; ++j) {
        const double m = static_cast<double>(j + 1);
        s += a[j] * std::sin(m * t + phase[j]) / (m * m);
      }
      return s;
    };
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) peak = std::max(peak, std::abs(raw(kTwoPi * static_cast<double>(k) / static_cast<double>(n))));
    const double scale = displacement / peak;
    try {
      return CircleDiffeo::from_lift(n, [&](double t) { return t + scale * raw(t); });
    } catch (const PreconditionError&) {
    }
  }
  throw ContractViolation("could not draw a monotone random diffeomorphism");
}

Loop random_chart_loop(GroupDescriptor group, std::size_t n, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const auto g = [&] { return gauss(rng); };
  std::vector<Matrix> a, b;
  for (int m = 0; m < 4; ++m) {
    a.push_back(random_algebra(group.n, g));
    b.push_back(random_algebra(group.n, g));
  }
  const auto x = [&](double t) {
    Matrix v = Matrix::Zero(group.n, group.n);
    for (std::size_t m = 0; m < 4; ++m) v += a[m] * std::cos(static_cast<double>(m) * t) + b[m] * std::sin(static_cast<double>(m) * t);
    return v;
  };
  double peak = 0.0;
  for (std::size_t k = 0; k < n; ++k) peak = std::max(peak, algebra_spectrum(x(kTwoPi * static_cast<double>(k) / static_cast<double>(n))).radius());
  const double scale = radius / peak;
  return Loop::from_function(group, n, [&](double t) { return exp_algebra(scale * x(t)); });
}

ComplexField random_field(int max_mode, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexField f;
  for (int m = -max_mode; m <= max_mode; ++m) f.add(m, Complex(gauss(rng), gauss(rng)));
  return f;
}

LieModes random_lie_modes(GroupDescriptor group, int max_mode, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const auto g = [&] { return gauss(rng); };
  LieModes f;
  f.group = group;
  for (int m = -max_mode; m <= max_mode; ++m) f.modes[m] = random_algebra(group.n, g) + Complex(0.0, 1.0) * random_algebra(group.n, g);
  return f;
}

Cover random_cover(std::mt19937_64& rng, std::size_t intervals, double d) {
  return uniform_cover(intervals, d, std::uniform_real_distribution<double>(0.0, kTwoPi)(rng));
}

namespace {

bool adjacent(std::size_t n, int i, int j) {
  const int m = static_cast<int>(n);
  return i == j || (i + 1) % m == j || (j + 1) % m == i;
}

Word scramble(const Presentation& p, Word w, std::mt19937_64& rng) {
  std::rotate(w.begin(), w.begin() + std::uniform_int_distribution<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(w.size()) - 1)(rng), w.end());
  std::uniform_int_distribution<std::size_t> pos(0, w.size() - 2);
  for (std::size_t k = 0; k < 2 * w.size(); ++k) {
    const std::size_t i = pos(rng);
    if (!adjacent(p.cover().size(), p.generator(w[i].gen).cover_index, p.generator(w[i + 1].gen).cover_index))
      std::swap(w[i], w[i + 1]);
  }
  return w;
}

template <class Store, class Element, class Factor, class Multiply>
Word relation(Presentation& p, const Element& a, const Element& b, std::mt19937_64& rng, Factor factor, Multiply multiply) {
  auto* store = dynamic_cast<Store*>(&p.store());
  if (!store) throw PreconditionError("presentation store does not match the relation type");
  const Element ab = multiply(a, b);
  Word w;
  const auto push = [&](const std::vector<Element>& fac, int exp) {
    std::vector<Letter> letters;
    for (std::size_t j = 0; j < fac.size(); ++j)
      letters.push_back({p.add_generator(store->add(fac[j]), p.cover().at(j), static_cast<int>(j)), exp});
    if (exp < 0) std::reverse(letters.begin(), letters.end());
    w.insert(w.end(), letters.begin(), letters.end());
  };
  push(factor(a), 1);
  push(factor(b), 1);
  push(factor(ab), -1);
  return scramble(p, std::move(w), rng);
}

}  // namespace

Word loop_relation(Presentation& p, const Loop& a, const Loop& b, std::mt19937_64& rng) {
  return relation<LoopStore>(
      p, a, b, rng, [&](const Loop& x) { return factor_over_cover(x, p.cover()); },
      [](const Loop& x, const Loop& y) { return multiply(x, y); });
}

Word diffeo_relation(Presentation& p, const CircleDiffeo& a, const CircleDiffeo& b, std::mt19937_64& rng) {
  return relation<DiffeoStore>(
      p, a, b, rng, [&](const CircleDiffeo& x) { return factor_over_cover(x, p.cover()); },
      [](const CircleDiffeo& x, const CircleDiffeo& y) { return compose(x, y); });
}

Word corrupt_relation(Presentation& p, const Word& w, std::mt19937_64& rng) {
  if (w.empty()) throw PreconditionError("cannot corrupt the empty word");
  std::uniform_int_distribution<std::size_t> pick(0, w.size() - 1);
  Word out = w;
  const std::size_t i = pick(rng);
  if (std::bernoulli_distribution(0.5)(rng)) {
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
  }
  // Swap in a generator of another letter's element declared on the same arc.
  const GeneratorInfo& own = p.generator(w[i].gen);
  for (std::size_t tries = 0; tries < 4 * w.size(); ++tries) {
    const GeneratorInfo& other = p.generator(w[pick(rng)].gen);
    if (other.element == own.element) continue;
    try {
      out[i] = {p.add_generator(other.element, own.label, own.cover_index), w[i].exp};
      return out;
    } catch (const PreconditionError&) {
    }
  }
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

}  // namespace circle_colim::fixtures
