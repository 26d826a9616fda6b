#include "circle_colim/loops.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "circle_colim/errors.hpp"

namespace circle_colim {
namespace {

void require_same_grid(const Loop& a, const Loop& b) {
  if (!(a.group() == b.group()))
    throw PreconditionError("loop groups differ: " + a.group().name() + " vs " + b.group().name());
  if (a.size() != b.size()) throw PreconditionError("loop grids differ");
}

Matrix repaired(Matrix u) {
  if (unitarity_defect(u) > 1e-12) return project_to_group(u);
  return u;
}

double circular_gap(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

// Logarithm of u closest to `prev`. Eigenvalue clusters are resolved in the
// eigenbasis of prev restricted to the cluster's eigenspace.
Matrix next_log(const Matrix& u, const Matrix& prev, std::size_t index) {
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();
  const Eigen::Index n = u.rows();
  std::vector<double> angle(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) angle[static_cast<std::size_t>(i)] = std::arg(t(i, i));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  Matrix log = Matrix::Zero(n, n);
  double trace = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    std::vector<Eigen::Index> cluster;
    Complex mean(0.0, 0.0);
    for (Eigen::Index j = i; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (circular_gap(angle[static_cast<std::size_t>(j)], angle[static_cast<std::size_t>(i)]) < 1e-10) {
        cluster.push_back(j);
        used[static_cast<std::size_t>(j)] = 1;
        mean += t(j, j);
      }
    }
    const Eigen::Index c = static_cast<Eigen::Index>(cluster.size());
    Matrix qc(n, c);
    for (Eigen::Index r = 0; r < c; ++r) qc.col(r) = q.col(cluster[static_cast<std::size_t>(r)]);
    const Matrix m = Complex(0.0, -1.0) * (qc.adjoint() * prev * qc);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    const double base = std::arg(mean);
    for (Eigen::Index r = 0; r < c; ++r) {
      const double mu = es.eigenvalues()(r);
      const double theta = base + kTwoPi * std::round((mu - base) / kTwoPi);
      const Eigen::VectorXcd v = qc * es.eigenvectors().col(r);
      log += Complex(0.0, theta) * (v * v.adjoint());
      trace += theta;
    }
  }
  if (std::abs(trace) > 1e-6) {
    std::ostringstream os;
    os << "continuous logarithm left su(n) at sample " << index << " (grid too coarse for this loop)";
    throw PreconditionError(os.str());
  }
  return project_to_algebra(log);
}

}  // namespace

Loop::Loop(GroupDescriptor group, std::vector<Matrix> values) : group_(group), values_(std::move(values)) {
  if (values_.size() < 16 || !std::has_single_bit(values_.size()))
    throw PreconditionError("loop: sample count must be a power of two >= 16, got " + std::to_string(values_.size()));
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const Matrix& u = values_[k];
    if (u.rows() != group_.n || u.cols() != group_.n)
      throw PreconditionError("loop: sample " + std::to_string(k) + " has the wrong shape for " + group_.name());
    if (!is_special_unitary(u, 1e-10))
      throw PreconditionError("loop: sample " + std::to_string(k) + " is not in " + group_.name());
  }
}

Loop Loop::constant(GroupDescriptor group, std::size_t n, const Matrix& value) {
  return Loop(group, std::vector<Matrix>(n, value));
}

Loop Loop::identity(GroupDescriptor group, std::size_t n) {
  return constant(group, n, Matrix::Identity(group.n, group.n));
}

Loop Loop::from_function(GroupDescriptor group, std::size_t n, const std::function<Matrix(double)>& f) {
  std::vector<Matrix> v(n);
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(h * static_cast<double>(k));
  return Loop(group, std::move(v));
}

double distance_to_identity(const Matrix& u) {
  return (u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

double sup_distance(const Loop& a, const Loop& b) {
  require_same_grid(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, max_abs_diff(a[k], b[k]));
  return worst;
}

Loop multiply(const Loop& a, const Loop& b, Exec exec) {
  require_same_grid(a, b);
  std::vector<Matrix> out(a.size());
  for_each_index(a.size(), exec, [&](std::size_t k) { out[k] = repaired(a[k] * b[k]); });
  return Loop(a.group(), std::move(out));
}

Loop invert(const Loop& a, Exec exec) {
  std::vector<Matrix> out(a.size());
  for_each_index(a.size(), exec, [&](std::size_t k) { out[k] = a[k].adjoint(); });
  return Loop(a.group(), std::move(out));
}

Loop product(std::span<const Loop> factors, Exec exec) {
  if (factors.empty()) throw PreconditionError("product: empty factor list");
  for (const Loop& f : factors) require_same_grid(factors.front(), f);
  const std::size_t n = factors.front().size();
  std::vector<Matrix> out(n);
  for_each_index(n, exec, [&](std::size_t k) {
    Matrix acc = factors.front()[k];
    for (std::size_t i = 1; i < factors.size(); ++i) acc = repaired(acc * factors[i][k]);
    out[k] = std::move(acc);
  });
  return Loop(factors.front().group(), std::move(out));
}

double max_commutator(const Loop& a, const Loop& b) {
  require_same_grid(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, distance_to_identity(a[k] * b[k] * a[k].adjoint() * b[k].adjoint()));
  return worst;
}

LieLoop log_chart(const Loop& gamma, Exec exec) {
  const std::size_t n = gamma.size();
  std::vector<Matrix> out(n);
  std::vector<char> failed(n, 0);
  for_each_index(n, exec, [&](std::size_t k) {
    try {
      out[k] = log_group(gamma[k]);
    } catch (const PreconditionError&) {
      failed[k] = 1;
    }
  });
  const auto it = std::find(failed.begin(), failed.end(), char{1});
  if (it != failed.end()) {
    const auto k = static_cast<std::size_t>(it - failed.begin());
    std::ostringstream os;
    os << "log_chart: sample " << k << " (t = " << gamma.grid(k) << ") lies outside the logarithm chart";
    throw PreconditionError(os.str());
  }
  return LieLoop{gamma.group(), std::move(out)};
}

Loop exp_loop(const LieLoop& x, Exec exec) {
  std::vector<Matrix> out(x.size());
  for_each_index(x.size(), exec, [&](std::size_t k) { out[k] = exp_algebra(x.values[k]); });
  return Loop(x.group, std::move(out));
}

bool in_chart(const Loop& gamma) {
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    try {
      if (!(algebra_spectrum(log_group(gamma[k])).radius() < kChartRadius)) return false;
    } catch (const PreconditionError&) {
      return false;
    }
  }
  return true;
}

std::vector<Loop> factor_over_cover(const Loop& gamma, const PartitionOfUnity& pu, Exec exec) {
  const std::size_t n = gamma.size();
  const std::size_t parts = pu.size();
  std::vector<std::vector<double>> weights(parts);
  for (std::size_t j = 0; j < parts; ++j) weights[j] = pu.sample(j, n, exec);
  std::vector<std::vector<Matrix>> out(parts, std::vector<Matrix>(n));
  std::vector<char> failed(n, 0);
  const Matrix id = Matrix::Identity(gamma.group().n, gamma.group().n);
  for_each_index(n, exec, [&](std::size_t k) {
    const Matrix& u = gamma[k];
    if (distance_to_identity(u) == 0.0) {
      for (std::size_t j = 0; j < parts; ++j) out[j][k] = id;
      return;
    }
    AlgebraSpectrum spec;
    try {
      spec = algebra_spectrum(log_group(u));
    } catch (const PreconditionError&) {
      failed[k] = 1;
      return;
    }
    if (!(spec.radius() < kChartRadius)) {
      failed[k] = 1;
      return;
    }
    for (std::size_t j = 0; j < parts; ++j) {
      const double w = weights[j][k];
      out[j][k] = w == 0.0 ? id : w == 1.0 ? u : spec.exp_scaled(w);
    }
  });
  const auto it = std::find(failed.begin(), failed.end(), char{1});
  if (it != failed.end()) {
    const auto k = static_cast<std::size_t>(it - failed.begin());
    std::ostringstream os;
    os << "factor_over_cover: sample " << k << " (t = " << gamma.grid(k) << ") lies outside the chart domain";
    throw PreconditionError(os.str());
  }
  std::vector<Loop> loops;
  loops.reserve(parts);
  for (auto& v : out) loops.emplace_back(gamma.group(), std::move(v));
  return loops;
}

std::vector<Loop> factor_over_cover(const Loop& gamma, const Cover& cover, Exec exec) {
  return factor_over_cover(gamma, build_partition_of_unity(cover), exec);
}

LieLoop continuous_log(const Loop& gamma, const std::optional<Matrix>& initial_log) {
  const std::size_t n = gamma.size();
  std::vector<Matrix> logs(n);
  if (initial_log) {
    if (max_abs_diff(exp_algebra(*initial_log), gamma[0]) > 1e-9)
      throw PreconditionError("continuous_log: initial logarithm does not exponentiate to the first sample");
    logs[0] = project_to_algebra(*initial_log);
  } else {
    logs[0] = log_group(gamma[0]);
  }
  for (std::size_t k = 1; k < n; ++k) logs[k] = next_log(gamma[k], logs[k - 1], k);
  const Matrix closing = next_log(gamma[0], logs[n - 1], 0);
  if (max_abs_diff(closing, logs[0]) > 1e-6)
    throw PreconditionError("continuous_log: the logarithm does not close up around the circle");
  return LieLoop{gamma.group(), std::move(logs)};
}

std::vector<Loop> factor_small(const Loop& gamma, std::size_t m, const std::optional<Matrix>& initial_log) {
  if (m == 0) throw PreconditionError("factor_small: m must be positive");
  const LieLoop log = continuous_log(gamma, initial_log);
  double radius = 0.0;
  for (const Matrix& x : log.values) radius = std::max(radius, algebra_spectrum(x).radius());
  const double per = radius / static_cast<double>(m);
  if (!(per < kChartRadius)) {
    std::ostringstream os;
    os << "factor_small: m = " << m << " too small; L/m has spectral radius " << per << ", chart radius is "
       << kChartRadius;
    throw PreconditionError(os.str());
  }
  if (m == 1) return {gamma};
  LieLoop scaled = log;
  for (Matrix& x : scaled.values) x /= static_cast<double>(m);
  return std::vector<Loop>(m, exp_loop(scaled));
}

bool LoopSupportCertificate::within(const Interval& arc, double slack) const {
  if (whole_circle) return false;
  if (!interval) return true;
  return arc.contains(*interval, slack);
}

LoopSupportCertificate support(const Loop& gamma, double tol) {
  const std::size_t n = gamma.size();
  std::vector<double> dist(n);
  std::vector<char> flags(n);
  for (std::size_t k = 0; k < n; ++k) {
    dist[k] = distance_to_identity(gamma[k]);
    flags[k] = dist[k] > tol ? 1 : 0;
  }
  const FlaggedArc arc = flagged_arc(flags);
  LoopSupportCertificate cert;
  cert.interval = arc.interval;
  cert.whole_circle = arc.whole_circle;
  cert.tolerance = tol;
  for (std::size_t i = 0; i < arc.gap_length; ++i)
    cert.max_distance_outside = std::max(cert.max_distance_outside, dist[(arc.gap_start + i) % n]);
  return cert;
}

bool based_check(const Loop& gamma, double p, double tol) {
  const std::size_t n = gamma.size();
  const double h = gamma.step();
  const auto k = static_cast<std::size_t>(std::llround(wrap_angle(p) / h)) % n;
  const Matrix& u0 = gamma[k];
  const Matrix& up = gamma[(k + 1) % n];
  const Matrix& um = gamma[(k + n - 1) % n];
  const double value = distance_to_identity(u0);
  const double first = ((up - um) / (2.0 * h)).cwiseAbs().maxCoeff();
  const double second = ((up - 2.0 * u0 + um) / (h * h)).cwiseAbs().maxCoeff();
  return value <= tol && first <= tol && second <= tol;
}

Loop restrict_to_arc(const Loop& gamma, const Interval& arc) {
  std::vector<Matrix> out(gamma.size());
  const Matrix id = Matrix::Identity(gamma.group().n, gamma.group().n);
  for (std::size_t k = 0; k < gamma.size(); ++k) out[k] = arc.contains(gamma.grid(k)) ? gamma[k] : id;
  return Loop(gamma.group(), std::move(out));
}

}  // namespace circle_colim
