#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "circle_colim/free_group.hpp"

namespace circle_colim {

/// Black-box group with a designated neighbourhood 𝒰 of the identity.
/// Elements are flat coordinate vectors whose meaning is oracle specific.
class GroupOracle {
 public:
  using Element = std::vector<double>;

  virtual ~GroupOracle() = default;
  virtual std::string name() const = 0;
  /// Exact equality (finite groups) rather than a tolerance test.
  virtual bool exact() const = 0;
  virtual Element identity() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& a) const = 0;
  virtual bool equal(const Element& a, const Element& b) const = 0;
  /// Size of the deviation from the identity, in the oracle's own metric.
  virtual double deviation(const Element& a) const = 0;
  virtual bool in_neighbourhood(const Element& a) const = 0;
  /// Random element of 𝒰.
  virtual Element random_small(std::mt19937_64& rng) const = 0;
  /// Random element different from the identity.
  virtual Element random_nontrivial(std::mt19937_64& rng) const = 0;
  virtual void validate(const Element& a) const = 0;

  bool is_identity(const Element& a) const { return equal(a, identity()); }
  /// Left-to-right product of labels[gen]^exp.
  Element evaluate(const Word& w, const std::vector<Element>& labels) const;
};

/// ℤ/n with 𝒰 = {k : min(k, n - k) ≤ radius}.
class CyclicOracle final : public GroupOracle {
 public:
  explicit CyclicOracle(int n, int radius = -1);
  std::string name() const override { return "Z/" + std::to_string(n_); }
  bool exact() const override { return true; }
  Element identity() const override { return {0.0}; }
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& a) const override;
  bool equal(const Element& a, const Element& b) const override { return a == b; }
  double deviation(const Element& a) const override;
  bool in_neighbourhood(const Element& a) const override { return deviation(a) <= radius_; }
  Element random_small(std::mt19937_64& rng) const override;
  Element random_nontrivial(std::mt19937_64& rng) const override;
  void validate(const Element& a) const override;
  Element element(int k) const;

 private:
  int n_;
  int radius_;
};

/// Symmetric group S_n on permutations of {0..n-1} (image vectors), with 𝒰 =
/// permutations moving at most `radius` points.
class SymmetricOracle final : public GroupOracle {
 public:
  explicit SymmetricOracle(int n, int radius = -1);
  std::string name() const override { return "S" + std::to_string(n_); }
  bool exact() const override { return true; }
  Element identity() const override;
  /// (a·b)(i) = a(b(i)).
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& a) const override;
  bool equal(const Element& a, const Element& b) const override { return a == b; }
  /// Number of moved points.
  double deviation(const Element& a) const override;
  bool in_neighbourhood(const Element& a) const override { return deviation(a) <= radius_; }
  Element random_small(std::mt19937_64& rng) const override;
  Element random_nontrivial(std::mt19937_64& rng) const override;
  void validate(const Element& a) const override;

 private:
  int n_;
  int radius_;
};

/// SU(2) as (re, im) of the row-major 2×2 entries. Equality within `tol` in
/// max-abs distance; 𝒰 is the ball of radius `radius` around the identity.
class SU2Oracle final : public GroupOracle {
 public:
  explicit SU2Oracle(double tol = 1e-9, double radius = 1.0) : tol_(tol), radius_(radius) {}
  std::string name() const override { return "SU(2)"; }
  bool exact() const override { return false; }
  Element identity() const override;
  Element multiply(const Element& a, const Element& b) const override;
  Element inverse(const Element& a) const override;
  bool equal(const Element& a, const Element& b) const override;
  double deviation(const Element& a) const override;
  bool in_neighbourhood(const Element& a) const override { return deviation(a) < radius_; }
  Element random_small(std::mt19937_64& rng) const override;
  Element random_nontrivial(std::mt19937_64& rng) const override;
  void validate(const Element& a) const override;
  double tolerance() const { return tol_; }

 private:
  double tol_;
  double radius_;
};

/// "zN", "sN" or "su2".
std::unique_ptr<GroupOracle> make_oracle(const std::string& spec);

struct DiskEdge {
  int from = 0;
  int to = 0;
  /// x_from⁻¹ x_to.
  GroupOracle::Element label;
};

/// Triangulated disk: vertices labelled by group elements, oriented edges
/// labelled by ratios, counterclockwise triangles, and the counterclockwise
/// boundary cycle starting at the base vertex.
struct TriangulatedDisk {
  std::vector<GroupOracle::Element> vertices;
  std::vector<DiskEdge> edges;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> boundary;

  /// Letter reading the edge between u and v in the direction u → v.
  Letter letter(int u, int v) const;
  /// Boundary word read from boundary[0].
  Word boundary_word() const;
  /// Bit i set when edge i of the face (a→b, b→c, c→a) points against the
  /// face orientation; one of eight patterns.
  int orientation_pattern(std::size_t face) const;
  /// The face relator read from its first vertex.
  Word face_relator(std::size_t face) const;
  std::vector<GroupOracle::Element> edge_labels() const;
};

/// Builds a disk whose edge labels are the vertex ratios. `flips` (one per
/// edge in first-seen order over the faces, missing entries false) reverses
/// an edge's orientation.
TriangulatedDisk make_disk(const GroupOracle& oracle, std::vector<GroupOracle::Element> vertices,
                           std::vector<std::array<int, 3>> faces, std::vector<int> boundary,
                           const std::vector<bool>& flips = {});

/// rows × cols grid of squares, each cut along a random diagonal, with random
/// edge orientations and vertex labels from a walk of 𝒰-steps.
TriangulatedDisk random_grid_disk(const GroupOracle& oracle, int rows, int cols, std::mt19937_64& rng);

/// Copy with one edge label multiplied by a nontrivial element.
TriangulatedDisk mutate_edge_label(const TriangulatedDisk& disk, const GroupOracle& oracle, std::mt19937_64& rng);

/// One shelling move: face removed from the current boundary, expressing
/// the boundary word as P r P⁻¹ times the new boundary word.
struct VkStep {
  std::size_t face = 0;
  /// "open-edge" (third vertex interior), "close-corner" (two boundary
  /// edges) or "last-face".
  std::string move;
  Word conjugator;
  Word relator;
  int pattern = 0;
};

struct VkDerivation {
  Word boundary;
  std::vector<VkStep> steps;
};

/// Combinatorial checks: Euler characteristic 1, edge/face incidences, a
/// simple boundary cycle. Empty when well formed.
std::vector<std::string> disk_structure_problems(const TriangulatedDisk& disk);

/// Shells the disk face by face from the boundary. Throws
/// PreconditionError if the disk is malformed or the greedy shelling gets
/// stuck.
VkDerivation vk_derive(const TriangulatedDisk& disk);

struct VkReport {
  bool valid = false;
  std::string message;
  VkDerivation derivation;
  /// Largest oracle deviation of a face relator or edge-ratio mismatch.
  double max_residual = 0.0;
  std::array<int, 8> pattern_counts{};
};

/// Replays a derivation: relators are the faces' edge words, every face
/// relator and edge ratio holds in the oracle, every edge label is in 𝒰,
/// and the boundary word equals ∏ P r P⁻¹ in the free group on edges.
VkReport check_vk_derivation(const TriangulatedDisk& disk, const GroupOracle& oracle, const VkDerivation& derivation);

/// vk_derive followed by check_vk_derivation. Malformed disks give an
/// invalid report rather than an exception.
VkReport vk_verify(const TriangulatedDisk& disk, const GroupOracle& oracle);

}  // namespace circle_colim
