#include "circle_colim/colimit_words.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "circle_colim/errors.hpp"

namespace circle_colim {
namespace {

Matrix power(const Matrix& u, int exp) { return exp > 0 ? u : Matrix(u.adjoint()); }

ElementSupport from_flags(const std::optional<Interval>& interval, bool whole) { return {interval, whole}; }

bool supports_disjoint(const ElementSupport& a, const ElementSupport& b, double slack) {
  if (a.whole_circle || b.whole_circle) return false;
  if (!a.interval || !b.interval) return true;
  return distance(*a.interval, *b.interval) > slack;
}

std::string describe(const Interval& a) {
  std::ostringstream os;
  os << "[" << a.start() << ", " << a.end() << "]";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- stores

double ElementStore::sample_distance(const Samples& a, const Samples& b) {
  if (a.size() != b.size()) throw PreconditionError("sample vectors differ in size");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

int LoopStore::add(Loop loop) {
  if (!(loop.group() == group_) || loop.size() != n_) throw PreconditionError("loop does not match the store's group/grid");
  elements_.push_back(std::move(loop));
  return static_cast<int>(elements_.size()) - 1;
}

std::vector<Matrix> LoopStore::evaluate(const ElementWord& w) const {
  std::vector<Matrix> out(n_);
  for_each_index(n_, Exec::parallel, [&](std::size_t k) {
    Matrix acc = Matrix::Identity(group_.n, group_.n);
    for (const auto& [id, exp] : w) acc = acc * power(at(id)[k], exp);
    out[k] = std::move(acc);
  });
  return out;
}

int LoopStore::store_product(const ElementWord& w) {
  std::vector<Matrix> v = evaluate(w);
  for (Matrix& u : v)
    if (unitarity_defect(u) > 1e-12) u = project_to_group(u);
  return add(Loop(group_, std::move(v)));
}

int LoopStore::store_restriction(int element, const Interval& arc) { return add(restrict_to_arc(at(element), arc)); }

ElementStore::Samples LoopStore::sample(const ElementWord& w) const {
  const auto values = evaluate(w);
  const std::size_t m = static_cast<std::size_t>(group_.n) * static_cast<std::size_t>(group_.n);
  Samples out(n_ * m);
  for (std::size_t k = 0; k < n_; ++k) std::copy_n(values[k].data(), m, out.begin() + static_cast<std::ptrdiff_t>(k * m));
  return out;
}

std::vector<char> LoopStore::moved(int element, double tol) const {
  const Loop& g = at(element);
  std::vector<char> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = circle_colim::distance_to_identity(g[k]) > tol;
  return out;
}

ElementSupport LoopStore::support(int element, double tol) const {
  const auto cert = circle_colim::support(at(element), tol);
  return from_flags(cert.interval, cert.whole_circle);
}

int DiffeoStore::add(CircleDiffeo phi) {
  if (phi.size() != n_) throw PreconditionError("diffeomorphism does not match the store's grid");
  elements_.push_back(std::move(phi));
  return static_cast<int>(elements_.size()) - 1;
}

std::vector<double> DiffeoStore::evaluate_lift(const ElementWord& w) const {
  std::vector<std::pair<const CircleDiffeo*, int>> maps;
  maps.reserve(w.size());
  for (const auto& [id, exp] : w) maps.emplace_back(&at(id), exp);
  std::vector<double> out(n_);
  const double h = kTwoPi / static_cast<double>(n_);
  for_each_index(n_, Exec::parallel, [&](std::size_t k) {
    double y = h * static_cast<double>(k);
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) y = it->second > 0 ? (*it->first)(y) : it->first->preimage(y);
    out[k] = y;
  });
  return out;
}

CircleDiffeo DiffeoStore::evaluate(const ElementWord& w) const {
  try {
    return CircleDiffeo(evaluate_lift(w));
  } catch (const PreconditionError& e) {
    throw ContractViolation(std::string("product is not a diffeomorphism on this grid: ") + e.what());
  }
}

int DiffeoStore::store_product(const ElementWord& w) { return add(evaluate(w)); }

int DiffeoStore::store_restriction(int element, const Interval& arc) { return add(restrict_to_arc(at(element), arc)); }

ElementStore::Samples DiffeoStore::sample(const ElementWord& w) const {
  const std::vector<double> lift = evaluate_lift(w);
  return Samples(lift.begin(), lift.end());
}

std::vector<char> DiffeoStore::moved(int element, double tol) const {
  const CircleDiffeo& phi = at(element);
  std::vector<char> out(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) out[k] = std::abs(phi.lift()[k] - phi.grid(k)) > tol;
  return out;
}

ElementSupport DiffeoStore::support(int element, double tol) const {
  const auto cert = circle_colim::support(at(element), tol);
  return from_flags(cert.interval, cert.whole_circle);
}

bool ElementStore::supported_in(int element, const Interval& arc, double tol) const {
  const auto flags = moved(element, tol);
  if (arc.length() + 2.0 * grid_step() >= kTwoPi) return true;
  const Interval grown = arc.enlarged(grid_step());
  for (std::size_t k = 0; k < flags.size(); ++k)
    if (flags[k] && !grown.contains(grid_step() * static_cast<double>(k))) return false;
  return true;
}

// ---------------------------------------------------------- presentation

Presentation::Presentation(std::shared_ptr<ElementStore> store, Cover cover, Tolerances tol)
    : store_(std::move(store)), cover_(std::move(cover)), tol_(tol) {
  if (!store_) throw PreconditionError("presentation needs an element store");
  const CoverReport rep = validate_cover(cover_);
  if (!rep.valid) throw PreconditionError("presentation cover is invalid");
}

int Presentation::add_generator(int element, const Interval& label, int cover_index, int left, int right) {
  if (element < 0 || static_cast<std::size_t>(element) >= store_->size())
    throw PreconditionError("dangling element id " + std::to_string(element));
  if (!store_->supported_in(element, label, tol_.support)) {
    const ElementSupport s = store_->support(element, tol_.support);
    throw PreconditionError("support " + (s.interval ? describe(*s.interval) : std::string("(whole circle)")) +
                            " of element " + std::to_string(element) + " is not inside the label " + describe(label));
  }
  generators_.push_back(GeneratorInfo{element, label, cover_index, left, right});
  return static_cast<int>(generators_.size()) - 1;
}

const GeneratorInfo& Presentation::generator(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= generators_.size())
    throw PreconditionError("dangling generator id " + std::to_string(id));
  return generators_[static_cast<std::size_t>(id)];
}

ElementWord Presentation::element_word(const Word& w) const {
  ElementWord out;
  out.reserve(w.size());
  for (const Letter& l : w) out.emplace_back(generator(l.gen).element, l.exp);
  return out;
}

double Presentation::identity_distance(const Word& w) const {
  if (w.empty()) return 0.0;
  return store_->distance_to_identity(element_word(w));
}

double Presentation::distance(const Word& a, const Word& b) const {
  return store_->distance(element_word(a), element_word(b));
}

Interval Presentation::enlarged_cover_arc(int j) const {
  return cover_.at(static_cast<std::size_t>(j)).enlarged(3.0 * cover_.d);
}

// ------------------------------------------------------------------ steps

const char* step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::free_reduce:
      return "free-reduce";
    case StepKind::interval_inclusion:
      return "interval-inclusion";
    case StepKind::merge_in_interval:
      return "merge-in-interval";
    case StepKind::disjoint_commute:
      return "disjoint-commute";
    case StepKind::conjugation_formula:
      return "conjugation-formula";
    case StepKind::split_support:
      return "split-support";
    case StepKind::telescope_merge:
      return "telescope-merge";
  }
  return "?";
}

StepKind parse_step_kind(const std::string& name) {
  for (StepKind k : {StepKind::free_reduce, StepKind::interval_inclusion, StepKind::merge_in_interval,
                     StepKind::disjoint_commute, StepKind::conjugation_formula, StepKind::split_support,
                     StepKind::telescope_merge})
    if (name == step_kind_name(k)) return k;
  throw PreconditionError("unknown rewrite step kind '" + name + "'");
}

Word apply_step(const Word& word, const RewriteStep& step) {
  if (step.position + step.length > word.size()) throw PreconditionError("rewrite step out of range");
  Word out(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(step.position));
  out.insert(out.end(), step.replacement.begin(), step.replacement.end());
  out.insert(out.end(), word.begin() + static_cast<std::ptrdiff_t>(step.position + step.length), word.end());
  return out;
}

std::optional<std::string> check_step(const Presentation& p, const Word& word, const RewriteStep& step) {
  if (step.position + step.length > word.size()) return std::string("segment out of range");
  const Word seg(word.begin() + static_cast<std::ptrdiff_t>(step.position),
                 word.begin() + static_cast<std::ptrdiff_t>(step.position + step.length));
  const Word& rep = step.replacement;
  for (const Letter& l : concat(seg, rep)) {
    if (l.exp != 1 && l.exp != -1) return std::string("exponent must be ±1");
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= p.generator_count())
      return "dangling generator id " + std::to_string(l.gen);
  }
  const double tol = p.tolerances().identity;
  const double slack = p.store().grid_step();
  const auto gen = [&](const Letter& l) -> const GeneratorInfo& { return p.generator(l.gen); };

  switch (step.kind) {
    case StepKind::free_reduce:
      if (!free_equal(seg, rep)) return std::string("segment and replacement differ in the free group");
      return std::nullopt;
    case StepKind::disjoint_commute: {
      if (seg.size() != 2 || rep.size() != 2 || !(rep[0] == seg[1]) || !(rep[1] == seg[0]))
        return std::string("disjoint-commute swaps exactly two letters");
      const auto sa = p.store().support(gen(seg[0]).element, p.tolerances().support);
      const auto sb = p.store().support(gen(seg[1]).element, p.tolerances().support);
      if (!supports_disjoint(sa, sb, slack)) return std::string("support certificates are not disjoint");
      return std::nullopt;
    }
    case StepKind::interval_inclusion: {
      if (seg.size() != 1 || rep.size() != 1 || seg[0].exp != rep[0].exp)
        return std::string("interval-inclusion relabels a single letter");
      const auto& a = gen(seg[0]);
      const auto& b = gen(rep[0]);
      if (a.element != b.element) return std::string("interval-inclusion must keep the element");
      if (!a.label.contains(b.label, 1e-12) && !b.label.contains(a.label, 1e-12))
        return std::string("labels are not nested");
      return std::nullopt;
    }
    default:
      break;
  }

  // Relations inside a single group G_K.
  if (!step.certificate) return std::string("missing interval certificate");
  const Interval& k = *step.certificate;
  for (const Letter& l : concat(seg, rep))
    if (!k.contains(gen(l).label, 1e-12))
      return "label " + describe(gen(l).label) + " is not inside the certificate " + describe(k);

  switch (step.kind) {
    case StepKind::conjugation_formula: {
      if (seg.size() != 3 || rep.size() != 1 || seg[0].gen != seg[2].gen || seg[0].exp != -seg[2].exp)
        return std::string("conjugation-formula rewrites δ γ δ⁻¹ to one letter");
      if (p.diffeo_mode()) {
        const auto& c = gen(rep[0]);
        if (c.left_conjugations > 3 || c.right_conjugations > 3)
          return std::string("more than three conjugations from one neighbouring interval");
        if (c.cover_index >= 0 && !p.enlarged_cover_arc(c.cover_index).contains(c.label, 1e-12))
          return std::string("conjugated label leaves the enlarged cover interval");
      }
      break;
    }
    case StepKind::split_support:
      if (seg.size() != 1 || rep.empty() || rep.size() > 2) return std::string("split-support splits one letter");
      break;
    case StepKind::telescope_merge:
      if (seg.size() != 2 || rep.size() > 1) return std::string("telescope-merge joins two letters");
      break;
    default:
      break;
  }
  double dist = 0.0;
  if (rep.empty())
    dist = p.identity_distance(seg);
  else if (seg.empty())
    dist = p.identity_distance(rep);
  else
    dist = p.distance(seg, rep);
  if (!(dist <= tol)) {
    std::ostringstream os;
    os << "segment and replacement differ by " << dist << " (tolerance " << tol << ")";
    return os.str();
  }
  return std::nullopt;
}

VerifyReport verify_derivation(const Presentation& p, const Derivation& d) {
  VerifyReport report;
  Word current = d.initial;
  const ElementStore::Samples reference = p.sample(d.initial);
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const RewriteStep& step = d.steps[i];
    if (auto err = check_step(p, current, step)) {
      report.failed_step = i;
      report.message = std::string(step_kind_name(step.kind)) + ": " + *err;
      return report;
    }
    current = apply_step(current, step);
    const double drift = ElementStore::sample_distance(p.sample(current), reference);
    report.max_drift = std::max(report.max_drift, drift);
    if (!(drift <= p.tolerances().identity)) {
      report.failed_step = i;
      std::ostringstream os;
      os << "intermediate word drifted by " << drift;
      report.message = os.str();
      return report;
    }
  }
  if (!(current == d.final)) {
    report.message = "replayed word differs from the recorded final word";
    return report;
  }
  report.valid = true;
  report.reaches_empty = current.empty();
  return report;
}

std::pair<std::vector<Word>, Derivation> permute_with_conjugators(const Word& word,
                                                                   const std::vector<std::size_t>& sigma) {
  auto conj = permutation_conjugators(word, sigma);
  Derivation d;
  d.initial = word;
  RewriteStep step;
  step.kind = StepKind::free_reduce;
  step.position = 0;
  step.length = word.size();
  step.replacement = permuted_expansion(word, sigma, conj);
  step.note = "permutation lemma";
  d.final = step.replacement;
  d.steps.push_back(std::move(step));
  d.complete = true;
  return {std::move(conj), std::move(d)};
}

// ------------------------------------------------------------- reduction

namespace {

class Reducer {
 public:
  Reducer(Presentation& p, const Word& word) : p_(p) {
    d_.initial = word;
    current_ = word;
  }

  Derivation run() {
    if (!precheck() || !normalize() || !sort() || !resolve() || !merge() || !split() || !telescope()) {
      d_.final = current_;
      return std::move(d_);
    }
    d_.final = current_;
    d_.complete = current_.empty();
    if (!d_.complete) d_.diagnostic = "letters remain after telescoping";
    return std::move(d_);
  }

 private:
  bool push(RewriteStep step) {
    if (auto err = check_step(p_, current_, step)) {
      std::ostringstream os;
      os << "blocked at step " << d_.steps.size() << " (" << step_kind_name(step.kind) << "): " << *err;
      d_.diagnostic = os.str();
      return false;
    }
    current_ = apply_step(current_, step);
    d_.steps.push_back(std::move(step));
    return true;
  }

  bool fail(std::string message) {
    d_.diagnostic = std::move(message);
    return false;
  }

  const GeneratorInfo& info(const Letter& l) const { return p_.generator(l.gen); }

  // Arc the pipeline treats as the home of cover index j.
  Interval home(int j) const {
    return p_.diffeo_mode() ? p_.enlarged_cover_arc(j) : p_.cover().at(static_cast<std::size_t>(j));
  }

  bool precheck() {
    for (const Letter& l : current_) {
      if (info(l).cover_index < 0) return fail("generator " + std::to_string(l.gen) + " has no cover index");
    }
    const double dist = p_.identity_distance(current_);
    if (!(dist <= p_.tolerances().identity)) {
      std::ostringstream os;
      os << "word does not evaluate to the identity (sup distance " << dist << ")";
      return fail(os.str());
    }
    return true;
  }

  // Free reduction, then every letter turned into a positive letter of a
  // distinct generator.
  bool normalize() {
    const Word reduced = free_reduce(current_);
    if (reduced.size() != current_.size()) {
      RewriteStep s{StepKind::free_reduce, 0, current_.size(), reduced, std::nullopt, "free reduction"};
      if (!push(std::move(s))) return false;
    }
    std::vector<char> used(p_.generator_count(), 0);
    for (std::size_t i = 0; i < current_.size(); ++i) {
      const Letter l = current_[i];
      const GeneratorInfo g = info(l);
      if (l.exp == 1 && !used[static_cast<std::size_t>(l.gen)]) {
        used[static_cast<std::size_t>(l.gen)] = 1;
        continue;
      }
      RewriteStep s;
      s.position = i;
      s.length = 1;
      if (l.exp == -1) {
        const int e = p_.store().store_product({{g.element, -1}});
        const int gen = p_.add_generator(e, g.label, g.cover_index, g.left_conjugations, g.right_conjugations);
        s.kind = StepKind::merge_in_interval;
        s.replacement = {{gen, 1}};
        s.certificate = g.label;
        s.note = "inverse letter";
      } else {
        const int gen = p_.add_generator(g.element, g.label, g.cover_index, g.left_conjugations, g.right_conjugations);
        s.kind = StepKind::interval_inclusion;
        s.replacement = {{gen, 1}};
        s.note = "fresh copy of a repeated generator";
      }
      used.resize(p_.generator_count(), 0);
      used[static_cast<std::size_t>(s.replacement[0].gen)] = 1;
      if (!push(std::move(s))) return false;
    }
    return true;
  }

  bool sort() {
    const std::size_t n = current_.size();
    sigma_.resize(n);
    std::iota(sigma_.begin(), sigma_.end(), std::size_t{0});
    std::stable_sort(sigma_.begin(), sigma_.end(), [&](std::size_t a, std::size_t b) {
      return info(current_[a]).cover_index < info(current_[b]).cover_index;
    });
    conjugators_ = permutation_conjugators(current_, sigma_);
    bool identity = true;
    for (std::size_t i = 0; i < n; ++i) identity = identity && sigma_[i] == i;
    if (identity) return true;
    RewriteStep s{StepKind::free_reduce, 0, n, permuted_expansion(current_, sigma_, conjugators_), std::nullopt,
                  "permutation lemma"};
    return push(std::move(s));
  }

  // Collapses every w_i a w_i⁻¹ block to one letter, innermost conjugator first.
  bool resolve() {
    std::size_t pos = 0;
    const double slack = p_.store().grid_step();
    const double stol = p_.tolerances().support;
    for (const Word& w : conjugators_) {
      for (std::size_t j = w.size(); j-- > 0;) {
        const std::size_t at = pos + j;
        const Letter b = current_[at];
        const Letter core = current_[at + 1];
        const auto sb = p_.store().support(info(b).element, stol);
        const auto sc = p_.store().support(info(core).element, stol);
        if (supports_disjoint(sb, sc, slack)) {
          if (!push({StepKind::disjoint_commute, at, 2, {core, b}, std::nullopt, "disjoint supports"})) return false;
          if (!push({StepKind::free_reduce, at + 1, 2, {}, std::nullopt, "cancel conjugator"})) return false;
          continue;
        }
        const GeneratorInfo gb = info(b);
        const GeneratorInfo gc = info(core);
        const int n = static_cast<int>(p_.cover().size());
        int left = gc.left_conjugations, right = gc.right_conjugations;
        Interval label = gc.label;
        if (gb.cover_index != gc.cover_index) {
          if (gb.cover_index == (gc.cover_index + n - 1) % n)
            ++left;
          else if (gb.cover_index == (gc.cover_index + 1) % n)
            ++right;
          else
            return fail("conjugator from a non-adjacent interval overlaps the conjugated element's support");
          if (p_.diffeo_mode()) label = home(gc.cover_index);
        }
        const int e = p_.store().store_product({{gb.element, 1}, {gc.element, core.exp}, {gb.element, -1}});
        int gen = 0;
        try {
          gen = p_.add_generator(e, label, gc.cover_index, left, right);
        } catch (const PreconditionError& err) {
          return fail(std::string("conjugated element escapes its label: ") + err.what());
        }
        const auto hull = arc_hull({gb.label, gc.label, label});
        if (!hull) return fail("conjugation involves labels covering the whole circle");
        if (!push({StepKind::conjugation_formula, at, 3, {{gen, 1}}, hull, "conjugation formula"})) return false;
      }
      pos += 1;
    }
    return true;
  }

  bool merge() {
    std::size_t i = 0;
    while (i < current_.size()) {
      const int k = info(current_[i]).cover_index;
      std::size_t j = i;
      while (j < current_.size() && info(current_[j]).cover_index == k) ++j;
      if (j - i > 1) {
        ElementWord ew;
        std::vector<Interval> labels;
        for (std::size_t t = i; t < j; ++t) {
          ew.emplace_back(info(current_[t]).element, current_[t].exp);
          labels.push_back(info(current_[t]).label);
        }
        const auto hull = arc_hull(labels);
        if (!hull) return fail("labels of one cover interval cover the circle");
        const int e = p_.store().store_product(ew);
        int gen = 0;
        try {
          gen = p_.add_generator(e, *hull, k);
        } catch (const PreconditionError& err) {
          return fail(std::string("merged element escapes its interval: ") + err.what());
        }
        if (!push({StepKind::merge_in_interval, i, j - i, {{gen, 1}}, hull, "chi_" + std::to_string(k + 1)}))
          return false;
      }
      ++i;
    }
    return true;
  }

  // χ_k = χ_k⁻ χ_k⁺ with the pieces on the overlaps with the neighbours.
  bool split() {
    const int n = static_cast<int>(p_.cover().size());
    std::vector<Word> pieces_out;
    std::size_t i = 0;
    while (i < current_.size()) {
      const Letter l = current_[i];
      const GeneratorInfo g = info(l);
      const int k = g.cover_index;
      const Interval left_nb = home((k + n - 1) % n);
      const Interval right_nb = home((k + 1) % n);
      std::optional<Interval> left, right;
      for (const auto& c : intersect(g.label, left_nb))
        if (c.length > 0.0 && g.label.offset(c.start) < 1e-12) left = Interval(c.start, c.length);
      for (const auto& c : intersect(g.label, right_nb))
        if (c.length > 0.0 && std::abs(g.label.offset(c.start) + c.length - g.label.length()) < 1e-12)
          right = Interval(c.start, c.length);
      if (left && right && distance(*left, *right) <= 0.0)
        return fail("overlap pieces of chi_" + std::to_string(k + 1) + " are not disjoint");
      Word rep;
      ElementWord check;
      for (const auto& arc : {left, right}) {
        if (!arc) continue;
        int e = 0;
        try {
          e = p_.store().store_restriction(g.element, *arc);
        } catch (const std::exception& err) {
          return fail("cannot restrict chi_" + std::to_string(k + 1) + " to an overlap: " + err.what());
        }
        if (p_.store().distance_to_identity({{e, 1}}) <= p_.tolerances().identity) continue;
        int gen = 0;
        try {
          gen = p_.add_generator(e, *arc, k);
        } catch (const PreconditionError& err) {
          return fail(std::string("overlap piece escapes its arc: ") + err.what());
        }
        rep.push_back({gen, 1});
      }
      if (rep.empty()) {
        if (!push({StepKind::merge_in_interval, i, 1, {}, g.label, "trivial chi"})) return false;
        continue;
      }
      if (!push({StepKind::split_support, i, 1, rep, g.label, "split chi_" + std::to_string(k + 1)})) return false;
      i += rep.size();
    }
    return true;
  }

  bool telescope() {
    bool progress = true;
    while (progress && !current_.empty()) {
      progress = false;
      for (std::size_t i = 0; i + 1 < current_.size(); ++i) {
        const Word pair{current_[i], current_[i + 1]};
        const auto hull = arc_hull({info(pair[0]).label, info(pair[1]).label});
        if (!hull || p_.identity_distance(pair) > p_.tolerances().identity) continue;
        if (!push({StepKind::telescope_merge, i, 2, {}, hull, "telescope"})) return false;
        progress = true;
        break;
      }
      if (progress) continue;
      for (std::size_t i = 0; i < current_.size(); ++i) {
        if (p_.identity_distance({current_[i]}) > p_.tolerances().identity) continue;
        if (!push({StepKind::merge_in_interval, i, 1, {}, info(current_[i]).label, "trivial piece"})) return false;
        progress = true;
        break;
      }
    }
    return true;
  }

  Presentation& p_;
  Derivation d_;
  Word current_;
  std::vector<std::size_t> sigma_;
  std::vector<Word> conjugators_;
};

}  // namespace

Derivation reduce_relation(Presentation& p, const Word& word) { return Reducer(p, word).run(); }

Derivation diagram_commutation(Presentation& p, int element, const Interval& first, const Interval& second) {
  const auto comps = intersect(first, second);
  if (comps.size() < 2) throw PreconditionError("diagram_commutation needs a disconnected intersection");
  Derivation d;
  const int g1 = p.add_generator(element, first);
  d.initial = {{g1, 1}};
  Word current = d.initial;
  const auto push = [&](RewriteStep s) {
    if (auto err = check_step(p, current, s)) throw ContractViolation(std::string("diagram commutation: ") + *err);
    current = apply_step(current, s);
    d.steps.push_back(std::move(s));
  };
  struct Piece {
    int element;
    Interval arc;
  };
  std::vector<Piece> pieces;
  for (const auto& c : comps) {
    const Interval arc(c.start, c.length);
    const int e = p.store().store_restriction(element, arc);
    if (p.store().distance_to_identity({{e, 1}}) == 0.0) continue;
    pieces.push_back({e, arc});
  }
  Word split;
  for (const auto& pc : pieces) split.push_back({p.add_generator(pc.element, first), 1});
  push({StepKind::split_support, 0, 1, split, first, "split along the components of the intersection"});
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const int down = p.add_generator(pieces[i].element, pieces[i].arc);
    push({StepKind::interval_inclusion, i, 1, {{down, 1}}, std::nullopt, "into the component"});
    const int up = p.add_generator(pieces[i].element, second);
    push({StepKind::interval_inclusion, i, 1, {{up, 1}}, std::nullopt, "out to the second interval"});
  }
  const int g2 = p.add_generator(element, second);
  push({StepKind::merge_in_interval, 0, current.size(), {{g2, 1}}, second, "merge in the second interval"});
  d.final = current;
  d.complete = true;
  return d;
}

}  // namespace circle_colim
