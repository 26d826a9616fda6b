#include "circle_colim/affine_weights.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>

#include "circle_colim/errors.hpp"

namespace circle_colim {
namespace {

IntMatrix chain(int rank) {
  IntMatrix a(static_cast<std::size_t>(rank), std::vector<int>(static_cast<std::size_t>(rank), 0));
  for (int i = 0; i < rank; ++i) {
    a[i][i] = 2;
    if (i + 1 < rank) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

void link(IntMatrix& a, int i, int j) { a[i][j] = a[j][i] = -1; }

RationalMatrix inverse(const IntMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw PreconditionError("Cartan matrix is singular");
    std::swap(a[p], a[c]);
    const Rational pivot = a[c][c];
    for (auto& v : a[c]) v /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  RationalMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return out;
}

int to_int(const Rational& r, const char* what) {
  if (boost::multiprecision::denominator(r) != 1) throw ContractViolation(std::string(what) + " is not integral");
  return static_cast<int>(boost::multiprecision::numerator(r));
}

}  // namespace

void validate_cartan(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw PreconditionError("empty Cartan matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw PreconditionError("Cartan matrix is not square");
    if (a[i][i] != 2) throw PreconditionError("Cartan matrix diagonal entry is not 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) throw PreconditionError("Cartan matrix has a positive off-diagonal entry");
      if ((a[i][j] == 0) != (a[j][i] == 0)) throw PreconditionError("Cartan matrix zero pattern is not symmetric");
    }
  }
}

DynkinDiagram finite_diagram(char series, int rank) {
  series = static_cast<char>(std::toupper(static_cast<unsigned char>(series)));
  const std::string name = std::string(1, series) + std::to_string(rank);
  IntMatrix a;
  switch (series) {
    case 'A':
      if (rank < 1) break;
      a = chain(rank);
      break;
    case 'B':
      if (rank < 2) break;
      a = chain(rank);
      a[rank - 1][rank - 2] = -2;
      break;
    case 'C':
      if (rank < 2) break;
      a = chain(rank);
      a[rank - 2][rank - 1] = -2;
      break;
    case 'D':
      if (rank < 4) break;
      a = chain(rank - 1);
      for (auto& row : a) row.push_back(0);
      a.emplace_back(static_cast<std::size_t>(rank), 0);
      a[rank - 1][rank - 1] = 2;
      link(a, rank - 3, rank - 1);
      break;
    case 'E':
      if (rank < 6 || rank > 8) break;
      a.assign(static_cast<std::size_t>(rank), std::vector<int>(static_cast<std::size_t>(rank), 0));
      for (int i = 0; i < rank; ++i) a[i][i] = 2;
      // Nodes 1,3,4,...,r in a chain with node 2 on node 4 (0-based shift).
      link(a, 0, 2);
      for (int i = 2; i + 1 < rank; ++i) link(a, i, i + 1);
      link(a, 1, 3);
      break;
    case 'F':
      if (rank != 4) break;
      a = chain(4);
      a[2][1] = -2;
      break;
    case 'G':
      if (rank != 2) break;
      a = chain(2);
      a[0][1] = -3;
      break;
    default:
      break;
  }
  if (a.empty()) throw PreconditionError("unsupported Lie type " + name);
  validate_cartan(a);
  return {name, a, false};
}

DynkinDiagram affine_diagram(char series, int rank) {
  const RootSystem roots(finite_diagram(series, rank));
  const IntMatrix& a = roots.diagram().cartan;
  const std::vector<int>& theta = roots.highest_root();
  const std::vector<int>& co = roots.comarks();
  const std::size_t r = a.size();
  IntMatrix out(r + 1, std::vector<int>(r + 1, 0));
  out[0][0] = 2;
  for (std::size_t j = 0; j < r; ++j) {
    int a0j = 0, aj0 = 0;
    for (std::size_t i = 0; i < r; ++i) {
      a0j -= co[i] * a[i][j];
      aj0 -= a[j][i] * theta[i];
    }
    out[0][j + 1] = a0j;
    out[j + 1][0] = aj0;
    for (std::size_t i = 0; i < r; ++i) out[j + 1][i + 1] = a[j][i];
  }
  validate_cartan(out);
  return {roots.diagram().name + "~", out, true};
}

std::vector<DynkinDiagram> builtin_affine_diagrams() {
  std::vector<DynkinDiagram> out;
  for (int r = 1; r <= 8; ++r) out.push_back(affine_diagram('A', r));
  for (int r = 3; r <= 8; ++r) out.push_back(affine_diagram('B', r));
  for (int r = 2; r <= 8; ++r) out.push_back(affine_diagram('C', r));
  for (int r = 4; r <= 8; ++r) out.push_back(affine_diagram('D', r));
  for (int r = 6; r <= 8; ++r) out.push_back(affine_diagram('E', r));
  out.push_back(affine_diagram('F', 4));
  out.push_back(affine_diagram('G', 2));
  return out;
}

Rank2Report rank2_subdiagram_check(const DynkinDiagram& d) {
  validate_cartan(d.cartan);
  Rank2Report report;
  report.pass = true;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Rank2Pair p{i, j, "", true};
      switch (d.cartan[i][j] * d.cartan[j][i]) {
        case 0:
          p.type = "A1xA1";
          break;
        case 1:
          p.type = "A2";
          break;
        case 2:
          p.type = "B2";
          break;
        case 3:
          p.type = "G2";
          break;
        default:
          p.type = "affine";
          p.finite = false;
          break;
      }
      report.pass = report.pass && p.finite;
      report.pairs.push_back(p);
    }
  return report;
}

// -------------------------------------------------------------- RootSystem

RootSystem::RootSystem(DynkinDiagram finite) : diagram_(std::move(finite)) {
  validate_cartan(diagram_.cartan);
  if (diagram_.affine) throw PreconditionError("RootSystem needs a finite-type diagram");
  const IntMatrix& a = diagram_.cartan;
  const std::size_t r = a.size();

  // Root lengths: a_ij |α_i|² = a_ji |α_j|² along the (connected) diagram.
  lengths_.assign(r, Rational(0));
  lengths_[0] = 1;
  std::queue<std::size_t> todo;
  todo.push(0);
  while (!todo.empty()) {
    const std::size_t i = todo.front();
    todo.pop();
    for (std::size_t j = 0; j < r; ++j) {
      if (j == i || a[i][j] == 0 || lengths_[j] != 0) continue;
      lengths_[j] = lengths_[i] * Rational(a[i][j]) / a[j][i];
      todo.push(j);
    }
  }
  if (std::count(lengths_.begin(), lengths_.end(), Rational(0)) != 0)
    throw PreconditionError("Dynkin diagram is not connected");
  const Rational longest = *std::max_element(lengths_.begin(), lengths_.end());
  for (auto& l : lengths_) l = l * 2 / longest;

  // Positive roots by height, from root strings.
  std::map<std::vector<int>, bool> known;
  std::vector<std::vector<int>> level;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    level.push_back(e);
    known[e] = true;
  }
  while (!level.empty()) {
    positive_.insert(positive_.end(), level.begin(), level.end());
    std::vector<std::vector<int>> next;
    for (const auto& beta : level)
      for (std::size_t i = 0; i < r; ++i) {
        int p = 0;
        std::vector<int> down = beta;
        while (true) {
          --down[i];
          if (!known.count(down)) break;
          ++p;
        }
        int pairing = 0;
        for (std::size_t j = 0; j < r; ++j) pairing += a[i][j] * beta[j];
        if (p - pairing <= 0) continue;
        std::vector<int> up = beta;
        ++up[i];
        if (known.emplace(up, true).second) next.push_back(up);
      }
    level = std::move(next);
  }
  if (positive_.size() > 1 && std::count_if(positive_.begin(), positive_.end(), [&](const auto& v) {
        return std::accumulate(v.begin(), v.end(), 0) == std::accumulate(positive_.back().begin(), positive_.back().end(), 0);
      }) != 1)
    throw ContractViolation("highest root is not unique");

  const std::vector<int>& theta = positive_.back();
  comarks_.resize(r);
  for (std::size_t i = 0; i < r; ++i) comarks_[i] = to_int(theta[i] * lengths_[i] / 2, "comark");

  const RationalMatrix inv = inverse(a);
  RationalMatrix b(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) b[i][j] = a[i][j] * lengths_[i] / 2;
  weight_form_.assign(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) s += inv[k][i] * b[k][l] * inv[l][j];
      weight_form_[i][j] = s;
    }
}

std::vector<int> RootSystem::simple_root_weight(std::size_t i) const {
  std::vector<int> out(rank());
  for (std::size_t j = 0; j < rank(); ++j) out[j] = diagram_.cartan[j][i];
  return out;
}

std::vector<int> RootSystem::highest_root_weight() const {
  std::vector<int> out(rank(), 0);
  const auto& theta = highest_root();
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) out[j] += theta[i] * diagram_.cartan[j][i];
  return out;
}

std::vector<int> RootSystem::coroot_weight(std::size_t i) const {
  std::vector<int> out = simple_root_weight(i);
  const int scale = to_int(Rational(2) / lengths_[i], "coroot scale");
  for (int& v : out) v *= scale;
  return out;
}

Rational RootSystem::inner(const std::vector<int>& a, const std::vector<int>& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) s += a[i] * weight_form_[i][j] * b[j];
  return s;
}

int RootSystem::level_of(const std::vector<int>& weight) const {
  int s = 0;
  for (std::size_t i = 0; i < rank(); ++i) s += weight[i] * comarks_[i];
  return s;
}

DynkinDiagram parse_lie_type(const std::string& text) {
  std::string s;
  for (char c : text)
    if (std::isalnum(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto digits_from = [&](std::size_t pos) -> int {
    if (pos >= s.size()) return -1;
    for (std::size_t i = pos; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
    return std::stoi(s.substr(pos));
  };
  if (s.rfind("su", 0) == 0) {
    const int n = digits_from(2);
    if (n >= 2) return finite_diagram('A', n - 1);
  } else if (s.rfind("sp", 0) == 0) {
    const int n = digits_from(2);
    if (n >= 4 && n % 2 == 0) return finite_diagram('C', n / 2);
  } else if (s.rfind("so", 0) == 0) {
    const int n = digits_from(2);
    if (n >= 5 && n % 2 == 1) return finite_diagram('B', (n - 1) / 2);
    if (n >= 8 && n % 2 == 0) return finite_diagram('D', n / 2);
  } else if (!s.empty() && std::string("abcdefg").find(s[0]) != std::string::npos) {
    const int r = digits_from(1);
    if (r >= 1) return finite_diagram(s[0], r);
  }
  throw PreconditionError("unsupported group descriptor '" + text + "'");
}

std::vector<std::vector<int>> enumerate_level_k_highest_weights(const RootSystem& roots, int k) {
  if (k < 0) throw PreconditionError("level must be non-negative");
  std::vector<std::vector<int>> out;
  std::vector<int> current(roots.rank(), 0);
  const auto& co = roots.comarks();
  const auto rec = [&](auto&& self, std::size_t i, int budget) -> void {
    if (i == current.size()) {
      out.push_back(current);
      return;
    }
    for (int a = 0; a * co[i] <= budget; ++a) {
      current[i] = a;
      self(self, i + 1, budget - a * co[i]);
    }
    current[i] = 0;
  };
  rec(rec, 0, k);
  return out;
}

// --------------------------------------------------------- AffineWeylAction

AffineWeylAction::AffineWeylAction(const RootSystem& roots, int k)
    : roots_(roots),
      k_(k),
      theta_(roots.highest_root_weight()),
      affine_(affine_diagram(roots.diagram().name[0], static_cast<int>(roots.rank())).cartan) {
  if (k < 1) throw PreconditionError("affine Weyl action needs level k >= 1");
}

AffineWeight AffineWeylAction::reflect(std::size_t node, const AffineWeight& w) const {
  AffineWeight out = w;
  if (node == 0) {
    const int c = k_ - roots_.level_of(w.finite);
    for (std::size_t j = 0; j < out.finite.size(); ++j) out.finite[j] += c * theta_[j];
    out.energy += c;
    return out;
  }
  if (node > roots_.rank()) throw PreconditionError("reflection node out of range");
  const int a = w.finite[node - 1];
  const auto alpha = roots_.simple_root_weight(node - 1);
  for (std::size_t j = 0; j < out.finite.size(); ++j) out.finite[j] -= a * alpha[j];
  return out;
}

AffineWeight AffineWeylAction::translate(const std::vector<int>& beta, const AffineWeight& w) const {
  AffineWeight out = w;
  const Rational shift = roots_.inner(w.finite, beta) + Rational(k_) * roots_.norm2(beta) / 2;
  out.energy += to_int(shift, "translation energy shift");
  for (std::size_t j = 0; j < out.finite.size(); ++j) out.finite[j] += k_ * beta[j];
  return out;
}

Rational AffineWeylAction::invariant(const AffineWeight& w) const {
  return Rational(w.energy) - roots_.norm2(w.finite) / (2 * k_);
}

int AffineWeylAction::coxeter_exponent(std::size_t i, std::size_t j) const {
  if (i == j) return 1;
  switch (affine_[i][j] * affine_[j][i]) {
    case 0:
      return 2;
    case 1:
      return 3;
    case 2:
      return 4;
    case 3:
      return 6;
    default:
      return 0;
  }
}

Rational paraboloid_constant(const RootSystem& roots, int k) {
  if (k < 1) throw PreconditionError("paraboloid constant needs level k >= 1");
  Rational best = 0;
  for (const auto& lambda : enumerate_level_k_highest_weights(roots, k))
    best = std::max(best, roots.norm2(lambda) / (2 * k));
  return best;
}

OrbitReport affine_weyl_orbit(const RootSystem& roots, const AffineWeight& w, int k, int depth) {
  if (w.finite.size() != roots.rank()) throw PreconditionError("weight has the wrong rank");
  const AffineWeylAction action(roots, k);
  OrbitReport report;
  report.paraboloid_constant = paraboloid_constant(roots, k);
  report.orbit.insert(w);
  std::vector<AffineWeight> frontier{w};
  std::vector<std::vector<int>> betas;
  for (std::size_t i = 0; i < roots.rank(); ++i) {
    auto b = roots.coroot_weight(i);
    betas.push_back(b);
    for (int& v : b) v = -v;
    betas.push_back(b);
  }
  for (int step = 0; step < depth; ++step) {
    std::vector<AffineWeight> next;
    const auto visit = [&](AffineWeight v) {
      if (report.orbit.insert(v).second) next.push_back(std::move(v));
    };
    for (const auto& x : frontier) {
      for (std::size_t node = 0; node < action.nodes(); ++node) visit(action.reflect(node, x));
      for (const auto& b : betas) visit(action.translate(b, x));
    }
    frontier = std::move(next);
  }
  for (const auto& x : report.orbit)
    if (x.energy >= 0 && Rational(x.energy) < roots.norm2(x.finite) / (2 * k) - report.paraboloid_constant)
      report.inside_paraboloid = false;
  return report;
}

}  // namespace circle_colim
