#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circle_colim/diffeo.hpp"
#include "circle_colim/free_group.hpp"
#include "circle_colim/geometry.hpp"
#include "circle_colim/loops.hpp"

namespace circle_colim {

/// (element id, ±1) factors of a product in an element store.
using ElementWord = std::vector<std::pair<int, int>>;

struct ElementSupport {
  std::optional<Interval> interval;
  bool whole_circle = false;
};

/// Append-only store of interval-supported group elements on a common grid:
/// loops (pointwise product) or circle diffeomorphisms (composition, with
/// the product a·b meaning a ∘ b).
class ElementStore {
 public:
  virtual ~ElementStore() = default;

  virtual std::string mode() const = 0;
  virtual std::size_t size() const = 0;
  virtual std::size_t grid_size() const = 0;

  /// Stores the product and returns its id.
  virtual int store_product(const ElementWord& w) = 0;
  /// Stores `element` restricted to `arc` (identity elsewhere).
  virtual int store_restriction(int element, const Interval& arc) = 0;

  /// Flattened grid values of the product (matrix entries for loops, lift
  /// values for diffeomorphisms).
  using Samples = std::vector<std::complex<double>>;
  virtual Samples sample(const ElementWord& w) const = 0;
  static double sample_distance(const Samples& a, const Samples& b);

  /// Sup distance between the two products on the grid.
  double distance(const ElementWord& a, const ElementWord& b) const { return sample_distance(sample(a), sample(b)); }
  /// Sup distance of the product from the identity.
  double distance_to_identity(const ElementWord& w) const { return sample_distance(sample(w), sample({})); }

  virtual ElementSupport support(int element, double tol) const = 0;
  /// Per-sample flags: the element moves sample k by more than tol.
  virtual std::vector<char> moved(int element, double tol) const = 0;
  /// Every moved sample lies in `arc`, allowing one grid step of slack. A
  /// support split between two components of `arc` passes even though its
  /// hull does not.
  bool supported_in(int element, const Interval& arc, double tol) const;
  /// Grid spacing, used as containment slack for support certificates.
  double grid_step() const { return kTwoPi / static_cast<double>(grid_size()); }
};

class LoopStore final : public ElementStore {
 public:
  explicit LoopStore(GroupDescriptor group, std::size_t n) : group_(group), n_(n) {}

  int add(Loop loop);
  const Loop& at(int id) const { return elements_.at(static_cast<std::size_t>(id)); }
  const GroupDescriptor& group() const { return group_; }

  std::string mode() const override { return "loop"; }
  std::size_t size() const override { return elements_.size(); }
  std::size_t grid_size() const override { return n_; }
  int store_product(const ElementWord& w) override;
  int store_restriction(int element, const Interval& arc) override;
  Samples sample(const ElementWord& w) const override;
  ElementSupport support(int element, double tol) const override;
  std::vector<char> moved(int element, double tol) const override;

 private:
  std::vector<Matrix> evaluate(const ElementWord& w) const;

  GroupDescriptor group_;
  std::size_t n_;
  std::vector<Loop> elements_;
};

class DiffeoStore final : public ElementStore {
 public:
  explicit DiffeoStore(std::size_t n) : n_(n) {}

  int add(CircleDiffeo phi);
  const CircleDiffeo& at(int id) const { return elements_.at(static_cast<std::size_t>(id)); }

  std::string mode() const override { return "diffeo"; }
  std::size_t size() const override { return elements_.size(); }
  std::size_t grid_size() const override { return n_; }
  int store_product(const ElementWord& w) override;
  int store_restriction(int element, const Interval& arc) override;
  Samples sample(const ElementWord& w) const override;
  ElementSupport support(int element, double tol) const override;
  std::vector<char> moved(int element, double tol) const override;

 private:
  std::vector<double> evaluate_lift(const ElementWord& w) const;
  CircleDiffeo evaluate(const ElementWord& w) const;

  std::size_t n_;
  std::vector<CircleDiffeo> elements_;
};

/// A generator [γ]_J: an element together with the arc it is declared in.
struct GeneratorInfo {
  int element = 0;
  Interval label{0.0, 1.0};
  /// Cover interval the generator descends from; -1 if none.
  int cover_index = -1;
  /// Conjugations applied from the left/right neighbour of cover_index.
  int left_conjugations = 0;
  int right_conjugations = 0;
};

struct Tolerances {
  /// Sup-norm tolerance for equality of evaluated products.
  double identity = 1e-8;
  /// Samples moved by more than this count towards a support certificate.
  double support = 1e-9;
};

/// Generators over an element store, declared against a cover.
class Presentation {
 public:
  Presentation(std::shared_ptr<ElementStore> store, Cover cover, Tolerances tol = {});

  ElementStore& store() const { return *store_; }
  const Cover& cover() const { return cover_; }
  const Tolerances& tolerances() const { return tol_; }
  bool diffeo_mode() const { return store_->mode() == "diffeo"; }

  /// Checks that the element's moved samples lie in `label` (one grid step
  /// of slack). Throws PreconditionError otherwise.
  int add_generator(int element, const Interval& label, int cover_index = -1, int left = 0, int right = 0);
  const GeneratorInfo& generator(int id) const;
  std::size_t generator_count() const { return generators_.size(); }
  const std::vector<GeneratorInfo>& generators() const { return generators_; }

  ElementWord element_word(const Word& w) const;
  /// Sup distance of the evaluated word from the identity.
  double identity_distance(const Word& w) const;
  /// Sup distance between the evaluations of two words.
  double distance(const Word& a, const Word& b) const;
  ElementStore::Samples sample(const Word& w) const { return store_->sample(element_word(w)); }
  /// Enlarged cover arc J_j⁺ used for conjugated diffeomorphisms.
  Interval enlarged_cover_arc(int j) const;

 private:
  std::shared_ptr<ElementStore> store_;
  Cover cover_;
  Tolerances tol_;
  std::vector<GeneratorInfo> generators_;
};

enum class StepKind {
  free_reduce,
  interval_inclusion,
  merge_in_interval,
  disjoint_commute,
  conjugation_formula,
  split_support,
  telescope_merge,
};

const char* step_kind_name(StepKind kind);
/// Inverse of step_kind_name; throws PreconditionError on unknown names.
StepKind parse_step_kind(const std::string& name);

/// Replaces word[position, position + length) by `replacement`.
struct RewriteStep {
  StepKind kind = StepKind::free_reduce;
  std::size_t position = 0;
  std::size_t length = 0;
  Word replacement;
  /// Arc containing the labels of every letter involved: the group G_K in
  /// which the relation holds.
  std::optional<Interval> certificate;
  std::string note;
};

struct Derivation {
  Word initial;
  std::vector<RewriteStep> steps;
  Word final;
  bool complete = false;
  std::string diagnostic;
};

Word apply_step(const Word& word, const RewriteStep& step);

/// Empty when the step's side conditions and numeric check hold on `word`,
/// otherwise the reason it fails.
std::optional<std::string> check_step(const Presentation& p, const Word& word, const RewriteStep& step);

struct VerifyReport {
  bool valid = false;
  /// Index of the first failing step, if any.
  std::optional<std::size_t> failed_step;
  std::string message;
  /// Largest sup distance of an intermediate word's evaluation from the
  /// initial word's.
  double max_drift = 0.0;
  /// Derivation ends in the empty word.
  bool reaches_empty = false;
};

/// Replays every step, checking side conditions, the per-step numeric
/// relation, and that every intermediate word evaluates like the initial one.
VerifyReport verify_derivation(const Presentation& p, const Derivation& d);

/// The free-group step of the permutation lemma on a positive word of
/// distinct generators: the whole word becomes ∏ w_i a_{σ(i)} w_i⁻¹.
std::pair<std::vector<Word>, Derivation> permute_with_conjugators(const Word& word, const std::vector<std::size_t>& sigma);

/// Rewrites an identity word whose generators carry cover indices down to
/// the empty word: invert letters, sort by cover index with the permutation
/// lemma, resolve conjugations, merge per interval into χ_k, split each χ_k
/// into its two overlap pieces, and telescope. Returns a partial derivation
/// with a diagnostic when a step is blocked or the word does not evaluate to
/// the identity. New generators are appended to the presentation.
Derivation reduce_relation(Presentation& p, const Word& word);

/// For an element in two arcs whose intersection is disconnected, derives
/// [γ]_{I₁} = [γ]_{I₂} by splitting along the components, moving each
/// piece through its component, and merging again.
Derivation diagram_commutation(Presentation& p, int element, const Interval& first, const Interval& second);

}  // namespace circle_colim
