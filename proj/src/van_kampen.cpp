#include "circle_colim/van_kampen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "circle_colim/errors.hpp"
#include "circle_colim/su_n.hpp"

namespace circle_colim {

GroupOracle::Element GroupOracle::evaluate(const Word& w, const std::vector<Element>& labels) const {
  Element acc = identity();
  for (const Letter& l : w) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= labels.size())
      throw PreconditionError("dangling generator id " + std::to_string(l.gen));
    const Element& x = labels[static_cast<std::size_t>(l.gen)];
    acc = multiply(acc, l.exp > 0 ? x : inverse(x));
  }
  return acc;
}

// ------------------------------------------------------------------ Z/n

CyclicOracle::CyclicOracle(int n, int radius) : n_(n), radius_(radius < 0 ? n : radius) {
  if (n < 1) throw PreconditionError("Z/n needs n >= 1");
}

GroupOracle::Element CyclicOracle::element(int k) const { return {static_cast<double>(((k % n_) + n_) % n_)}; }

GroupOracle::Element CyclicOracle::multiply(const Element& a, const Element& b) const {
  return element(static_cast<int>(a.at(0)) + static_cast<int>(b.at(0)));
}

GroupOracle::Element CyclicOracle::inverse(const Element& a) const { return element(-static_cast<int>(a.at(0))); }

double CyclicOracle::deviation(const Element& a) const {
  const int k = static_cast<int>(a.at(0));
  return std::min(k, n_ - k);
}

GroupOracle::Element CyclicOracle::random_small(std::mt19937_64& rng) const {
  const int r = std::max(0, radius_ / 4);
  return element(std::uniform_int_distribution<int>(-r, r)(rng));
}

GroupOracle::Element CyclicOracle::random_nontrivial(std::mt19937_64& rng) const {
  if (n_ == 1) throw PreconditionError("Z/1 has no nontrivial element");
  return element(std::uniform_int_distribution<int>(1, n_ - 1)(rng));
}

void CyclicOracle::validate(const Element& a) const {
  if (a.size() != 1 || a[0] != std::floor(a[0]) || a[0] < 0 || a[0] >= n_)
    throw PreconditionError("not an element of " + name());
}

// ------------------------------------------------------------------ S_n

SymmetricOracle::SymmetricOracle(int n, int radius) : n_(n), radius_(radius < 0 ? n : radius) {
  if (n < 1) throw PreconditionError("S_n needs n >= 1");
}

GroupOracle::Element SymmetricOracle::identity() const {
  Element e(static_cast<std::size_t>(n_));
  std::iota(e.begin(), e.end(), 0.0);
  return e;
}

GroupOracle::Element SymmetricOracle::multiply(const Element& a, const Element& b) const {
  Element out(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.at(static_cast<std::size_t>(b.at(i)));
  return out;
}

GroupOracle::Element SymmetricOracle::inverse(const Element& a) const {
  Element out(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < out.size(); ++i) out[static_cast<std::size_t>(a.at(i))] = static_cast<double>(i);
  return out;
}

double SymmetricOracle::deviation(const Element& a) const {
  int moved = 0;
  for (std::size_t i = 0; i < a.size(); ++i) moved += a[i] != static_cast<double>(i);
  return moved;
}

GroupOracle::Element SymmetricOracle::random_small(std::mt19937_64& rng) const {
  Element e = identity();
  if (n_ < 2 || radius_ < 2) return e;
  if (radius_ >= n_) {
    std::shuffle(e.begin(), e.end(), rng);
    return e;
  }
  std::uniform_int_distribution<int> pick(0, n_ - 1);
  const int i = pick(rng), j = pick(rng);
  std::swap(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]);
  return e;
}

GroupOracle::Element SymmetricOracle::random_nontrivial(std::mt19937_64& rng) const {
  if (n_ < 2) throw PreconditionError("S_1 has no nontrivial element");
  Element e = identity();
  do std::shuffle(e.begin(), e.end(), rng);
  while (is_identity(e));
  return e;
}

void SymmetricOracle::validate(const Element& a) const {
  if (a.size() != static_cast<std::size_t>(n_)) throw PreconditionError("not an element of " + name());
  std::vector<char> seen(a.size(), 0);
  for (double x : a) {
    if (x != std::floor(x) || x < 0 || x >= n_ || seen[static_cast<std::size_t>(x)])
      throw PreconditionError("not a permutation of 0.." + std::to_string(n_ - 1));
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

// ---------------------------------------------------------------- SU(2)

namespace {

Matrix to_matrix(const GroupOracle::Element& a) {
  if (a.size() != 8) throw PreconditionError("SU(2) elements have 8 coordinates");
  Matrix u(2, 2);
  for (int k = 0; k < 4; ++k) u(k / 2, k % 2) = Complex(a[2 * k], a[2 * k + 1]);
  return u;
}

GroupOracle::Element from_matrix(const Matrix& u) {
  GroupOracle::Element a(8);
  for (int k = 0; k < 4; ++k) {
    a[2 * k] = u(k / 2, k % 2).real();
    a[2 * k + 1] = u(k / 2, k % 2).imag();
  }
  return a;
}

}  // namespace

GroupOracle::Element SU2Oracle::identity() const { return from_matrix(Matrix::Identity(2, 2)); }

GroupOracle::Element SU2Oracle::multiply(const Element& a, const Element& b) const {
  return from_matrix(to_matrix(a) * to_matrix(b));
}

GroupOracle::Element SU2Oracle::inverse(const Element& a) const { return from_matrix(to_matrix(a).adjoint()); }

bool SU2Oracle::equal(const Element& a, const Element& b) const {
  return max_abs_diff(to_matrix(a), to_matrix(b)) <= tol_;
}

double SU2Oracle::deviation(const Element& a) const { return max_abs_diff(to_matrix(a), Matrix::Identity(2, 2)); }

GroupOracle::Element SU2Oracle::random_small(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss;
  const Matrix x = random_algebra(2, [&] { return gauss(rng); });
  const double scale = 0.15 * radius_ / std::max(1e-12, algebra_spectrum(x).radius());
  return from_matrix(exp_algebra(scale * x));
}

GroupOracle::Element SU2Oracle::random_nontrivial(std::mt19937_64& rng) const {
  std::normal_distribution<double> gauss;
  return from_matrix(random_special_unitary(2, [&] { return gauss(rng); }));
}

void SU2Oracle::validate(const Element& a) const {
  if (!is_special_unitary(to_matrix(a), 1e-10)) throw PreconditionError("not an element of SU(2)");
}

std::unique_ptr<GroupOracle> make_oracle(const std::string& spec) {
  if (spec == "su2" || spec == "SU(2)") return std::make_unique<SU2Oracle>();
  if (spec.size() >= 2 && (spec[0] == 'z' || spec[0] == 'Z' || spec[0] == 's' || spec[0] == 'S')) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(spec.substr(1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used + 1 == spec.size() && n >= 1) {
      if (spec[0] == 'z' || spec[0] == 'Z') return std::make_unique<CyclicOracle>(n);
      return std::make_unique<SymmetricOracle>(n);
    }
  }
  throw PreconditionError("unknown group oracle '" + spec + "' (expected zN, sN or su2)");
}

// ----------------------------------------------------------------- disks

Letter TriangulatedDisk::letter(int u, int v) const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].from == u && edges[e].to == v) return {static_cast<int>(e), 1};
    if (edges[e].from == v && edges[e].to == u) return {static_cast<int>(e), -1};
  }
  throw PreconditionError("no edge between vertices " + std::to_string(u) + " and " + std::to_string(v));
}

Word TriangulatedDisk::boundary_word() const {
  Word w;
  for (std::size_t i = 0; i < boundary.size(); ++i) w.push_back(letter(boundary[i], boundary[(i + 1) % boundary.size()]));
  return w;
}

int TriangulatedDisk::orientation_pattern(std::size_t face) const {
  const auto& f = faces.at(face);
  int bits = 0;
  for (int i = 0; i < 3; ++i)
    if (letter(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>((i + 1) % 3)]).exp < 0) bits |= 1 << i;
  return bits;
}

Word TriangulatedDisk::face_relator(std::size_t face) const {
  const auto& f = faces.at(face);
  return {letter(f[0], f[1]), letter(f[1], f[2]), letter(f[2], f[0])};
}

std::vector<GroupOracle::Element> TriangulatedDisk::edge_labels() const {
  std::vector<GroupOracle::Element> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(e.label);
  return out;
}

TriangulatedDisk make_disk(const GroupOracle& oracle, std::vector<GroupOracle::Element> vertices,
                           std::vector<std::array<int, 3>> faces, std::vector<int> boundary,
                           const std::vector<bool>& flips) {
  TriangulatedDisk disk;
  disk.vertices = std::move(vertices);
  disk.faces = std::move(faces);
  disk.boundary = std::move(boundary);
  const int nv = static_cast<int>(disk.vertices.size());
  std::map<std::pair<int, int>, int> index;
  for (const auto& f : disk.faces) {
    for (int i = 0; i < 3; ++i) {
      int u = f[static_cast<std::size_t>(i)], v = f[static_cast<std::size_t>((i + 1) % 3)];
      if (u < 0 || v < 0 || u >= nv || v >= nv || u == v) throw PreconditionError("face with a bad vertex index");
      const std::pair<int, int> key = std::minmax(u, v);
      if (index.count(key)) continue;
      const std::size_t e = disk.edges.size();
      if (e < flips.size() && flips[e]) std::swap(u, v);
      index[key] = static_cast<int>(e);
      disk.edges.push_back({u, v, oracle.multiply(oracle.inverse(disk.vertices[static_cast<std::size_t>(u)]),
                                                  disk.vertices[static_cast<std::size_t>(v)])});
    }
  }
  return disk;
}

TriangulatedDisk random_grid_disk(const GroupOracle& oracle, int rows, int cols, std::mt19937_64& rng) {
  if (rows < 1 || cols < 1) throw PreconditionError("grid disk needs at least one square");
  // x_{i,j} = c_i r_j keeps every edge ratio a product of at most two
  // conjugates of small steps.
  std::vector<GroupOracle::Element> c{oracle.random_small(rng)}, r{oracle.identity()};
  for (int i = 0; i < rows; ++i) c.push_back(oracle.multiply(c.back(), oracle.random_small(rng)));
  for (int j = 0; j < cols; ++j) r.push_back(oracle.multiply(r.back(), oracle.random_small(rng)));
  const auto id = [&](int i, int j) { return i * (cols + 1) + j; };
  std::vector<GroupOracle::Element> vertices;
  for (int i = 0; i <= rows; ++i)
    for (int j = 0; j <= cols; ++j)
      vertices.push_back(oracle.multiply(c[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(j)]));
  std::vector<std::array<int, 3>> faces;
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const int a = id(i, j), b = id(i, j + 1), cc = id(i + 1, j + 1), d = id(i + 1, j);
      if (coin(rng)) {
        faces.push_back({a, b, cc});
        faces.push_back({a, cc, d});
      } else {
        faces.push_back({a, b, d});
        faces.push_back({b, cc, d});
      }
    }
  std::vector<int> boundary;
  for (int j = 0; j < cols; ++j) boundary.push_back(id(0, j));
  for (int i = 0; i < rows; ++i) boundary.push_back(id(i, cols));
  for (int j = cols; j > 0; --j) boundary.push_back(id(rows, j));
  for (int i = rows; i > 0; --i) boundary.push_back(id(i, 0));
  const std::size_t edge_count = static_cast<std::size_t>(rows * (cols + 1) + cols * (rows + 1) + rows * cols);
  std::vector<bool> flips(edge_count);
  for (std::size_t e = 0; e < edge_count; ++e) flips[e] = coin(rng);
  return make_disk(oracle, std::move(vertices), std::move(faces), std::move(boundary), flips);
}

TriangulatedDisk mutate_edge_label(const TriangulatedDisk& disk, const GroupOracle& oracle, std::mt19937_64& rng) {
  if (disk.edges.empty()) throw PreconditionError("disk has no edges");
  TriangulatedDisk out = disk;
  auto& e = out.edges[std::uniform_int_distribution<std::size_t>(0, disk.edges.size() - 1)(rng)];
  e.label = oracle.multiply(e.label, oracle.random_nontrivial(rng));
  return out;
}

std::vector<std::string> disk_structure_problems(const TriangulatedDisk& disk) {
  std::vector<std::string> problems;
  const int nv = static_cast<int>(disk.vertices.size());
  std::map<std::pair<int, int>, int> edge_index;
  for (std::size_t e = 0; e < disk.edges.size(); ++e) {
    const auto& ed = disk.edges[e];
    if (ed.from < 0 || ed.to < 0 || ed.from >= nv || ed.to >= nv || ed.from == ed.to) {
      problems.push_back("edge " + std::to_string(e) + " has bad endpoints");
      continue;
    }
    if (!edge_index.emplace(std::minmax(ed.from, ed.to), static_cast<int>(e)).second)
      problems.push_back("edge " + std::to_string(e) + " duplicates another edge");
  }
  // Directed use of each edge by the faces: +1 along, -1 against.
  std::map<std::pair<int, int>, int> use;
  for (std::size_t f = 0; f < disk.faces.size(); ++f)
    for (int i = 0; i < 3; ++i) {
      const int u = disk.faces[f][static_cast<std::size_t>(i)], v = disk.faces[f][static_cast<std::size_t>((i + 1) % 3)];
      if (!edge_index.count(std::minmax(u, v))) {
        problems.push_back("face " + std::to_string(f) + " uses a missing edge");
        continue;
      }
      if (++use[{u, v}] > 1) problems.push_back("two faces traverse " + std::to_string(u) + "→" + std::to_string(v) + " in the same direction");
    }
  std::set<std::pair<int, int>> boundary_edges;
  std::set<int> boundary_vertices;
  for (std::size_t i = 0; i < disk.boundary.size(); ++i) {
    const int u = disk.boundary[i], v = disk.boundary[(i + 1) % disk.boundary.size()];
    if (!boundary_vertices.insert(u).second) problems.push_back("boundary cycle is not simple");
    boundary_edges.insert({u, v});
  }
  if (disk.boundary.size() < 3) problems.push_back("boundary cycle has fewer than three vertices");
  for (const auto& [key, e] : edge_index) {
    const auto [u, v] = key;
    const int along = use.count({u, v}) ? use[{u, v}] : 0;
    const int against = use.count({v, u}) ? use[{v, u}] : 0;
    const bool on_boundary = boundary_edges.count({u, v}) || boundary_edges.count({v, u});
    if (on_boundary) {
      const bool matches = boundary_edges.count({u, v}) ? along == 1 && against == 0 : against == 1 && along == 0;
      if (!matches) problems.push_back("boundary edge " + std::to_string(e) + " is not on exactly one face with matching orientation");
    } else if (along != 1 || against != 1) {
      problems.push_back("interior edge " + std::to_string(e) + " is not shared by two oppositely oriented faces");
    }
  }
  const long long euler = static_cast<long long>(disk.vertices.size()) - static_cast<long long>(disk.edges.size()) +
                          static_cast<long long>(disk.faces.size());
  if (euler != 1) problems.push_back("Euler characteristic is " + std::to_string(euler) + ", not 1");
  return problems;
}

VkDerivation vk_derive(const TriangulatedDisk& disk) {
  const auto problems = disk_structure_problems(disk);
  if (!problems.empty()) throw PreconditionError("malformed disk: " + problems.front());
  VkDerivation out;
  out.boundary = disk.boundary_word();
  std::vector<int> boundary = disk.boundary;
  std::vector<char> alive(disk.faces.size(), 1);
  std::size_t remaining = disk.faces.size();
  const int base = boundary.front();

  // The alive face traversing u → v, rotated to start at u.
  const auto face_on = [&](int u, int v) -> std::optional<std::pair<std::size_t, int>> {
    for (std::size_t f = 0; f < disk.faces.size(); ++f) {
      if (!alive[f]) continue;
      for (int i = 0; i < 3; ++i)
        if (disk.faces[f][static_cast<std::size_t>(i)] == u && disk.faces[f][static_cast<std::size_t>((i + 1) % 3)] == v)
          return std::make_pair(f, disk.faces[f][static_cast<std::size_t>((i + 2) % 3)]);
    }
    return std::nullopt;
  };
  const auto faces_at = [&](int v) {
    int count = 0;
    for (std::size_t f = 0; f < disk.faces.size(); ++f)
      if (alive[f] && std::find(disk.faces[f].begin(), disk.faces[f].end(), v) != disk.faces[f].end()) ++count;
    return count;
  };
  const auto prefix = [&](std::size_t i) {
    Word p;
    for (std::size_t k = 0; k < i; ++k) p.push_back(disk.letter(boundary[k], boundary[k + 1]));
    return p;
  };

  while (remaining > 0) {
    const std::size_t m = boundary.size();
    bool moved = false;
    for (std::size_t i = 0; i < m && !moved; ++i) {
      const int a = boundary[i], b = boundary[(i + 1) % m];
      const auto hit = face_on(a, b);
      if (!hit) continue;
      const auto [f, c] = *hit;
      const Word relator{disk.letter(a, b), disk.letter(b, c), disk.letter(c, a)};
      VkStep step{f, "", prefix(i), relator, disk.orientation_pattern(f)};
      const bool c_on_boundary = std::find(boundary.begin(), boundary.end(), c) != boundary.end();
      if (remaining == 1) {
        if (m != 3 || i != 0) continue;
        step.move = "last-face";
        boundary.clear();
      } else if (!c_on_boundary) {
        step.move = "open-edge";
        boundary.insert(boundary.begin() + static_cast<std::ptrdiff_t>(i + 1), c);
      } else if (i + 1 < m && boundary[(i + 2) % m] == c && b != base && faces_at(b) == 1) {
        step.move = "close-corner";
        boundary.erase(boundary.begin() + static_cast<std::ptrdiff_t>(i + 1));
      } else {
        continue;
      }
      alive[f] = 0;
      --remaining;
      out.steps.push_back(std::move(step));
      moved = true;
    }
    if (!moved) throw PreconditionError("greedy shelling is stuck with " + std::to_string(remaining) + " faces left");
  }
  return out;
}

VkReport check_vk_derivation(const TriangulatedDisk& disk, const GroupOracle& oracle, const VkDerivation& derivation) {
  VkReport report;
  report.derivation = derivation;
  const auto fail = [&](std::string message) {
    report.valid = false;
    report.message = std::move(message);
    return report;
  };
  const auto problems = disk_structure_problems(disk);
  if (!problems.empty()) return fail("malformed disk: " + problems.front());
  for (const auto& v : disk.vertices) oracle.validate(v);
  const auto labels = disk.edge_labels();
  for (std::size_t e = 0; e < disk.edges.size(); ++e) {
    const auto& ed = disk.edges[e];
    oracle.validate(ed.label);
    if (!oracle.in_neighbourhood(ed.label)) return fail("edge " + std::to_string(e) + " label is outside the neighbourhood");
    const auto ratio = oracle.multiply(oracle.inverse(disk.vertices[static_cast<std::size_t>(ed.from)]),
                                       disk.vertices[static_cast<std::size_t>(ed.to)]);
    const auto mismatch = oracle.multiply(oracle.inverse(ratio), ed.label);
    report.max_residual = std::max(report.max_residual, oracle.deviation(mismatch));
    if (!oracle.equal(ratio, ed.label)) return fail("edge " + std::to_string(e) + " label is not the vertex ratio");
  }
  if (!(derivation.boundary == disk.boundary_word())) return fail("derivation boundary word differs from the disk's");
  std::vector<char> used(disk.faces.size(), 0);
  Word product;
  for (std::size_t s = 0; s < derivation.steps.size(); ++s) {
    const VkStep& step = derivation.steps[s];
    if (step.face >= disk.faces.size() || used[step.face]) return fail("step " + std::to_string(s) + " names a bad or repeated face");
    used[step.face] = 1;
    // The relator must be the face's boundary read from one of its corners.
    Word r = disk.face_relator(step.face);
    bool matches = false;
    for (int k = 0; k < 3 && !matches; ++k) {
      matches = r == step.relator;
      std::rotate(r.begin(), r.begin() + 1, r.end());
    }
    if (!matches) return fail("step " + std::to_string(s) + " relator is not the face boundary");
    if (step.pattern != disk.orientation_pattern(step.face)) return fail("step " + std::to_string(s) + " records the wrong orientation pattern");
    const auto value = oracle.evaluate(step.relator, labels);
    report.max_residual = std::max(report.max_residual, oracle.deviation(value));
    if (!oracle.is_identity(value)) return fail("face " + std::to_string(step.face) + " relation fails in " + oracle.name());
    ++report.pattern_counts[static_cast<std::size_t>(step.pattern)];
    product = concat(product, conjugate(step.conjugator, step.relator));
  }
  if (std::find(used.begin(), used.end(), 0) != used.end()) return fail("some face has no step");
  if (!free_equal(product, derivation.boundary))
    return fail("boundary word is not the product of the conjugated face relators");
  report.valid = true;
  report.message = "ok";
  return report;
}

VkReport vk_verify(const TriangulatedDisk& disk, const GroupOracle& oracle) {
  try {
    return check_vk_derivation(disk, oracle, vk_derive(disk));
  } catch (const PreconditionError& e) {
    VkReport report;
    report.message = e.what();
    return report;
  }
}

}  // namespace circle_colim
