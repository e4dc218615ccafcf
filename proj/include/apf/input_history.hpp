#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "apf/errors.hpp"
#include "apf/matrix_ops.hpp"

namespace apf {

/// Sliding record of the scalar input over [newest - D, newest] on a uniform
/// grid with N*h = D exactly. Stored samples are right-continuous node
/// values; one node may carry a distinct left limit (the input jumps once,
/// when the feedback loop closes at t = 0). Off-grid queries interpolate
/// linearly, so the stored history is exactly the piecewise-linear input the
/// simulator applies.
class InputHistory {
 public:
  InputHistory(double step, int num_intervals, double newest_time,
               std::vector<double> samples)
      : h_(step), n_(num_intervals), newest_(newest_time),
        values_(std::move(samples)) {
    if (!(h_ > 0.0)) throw ConfigError("history: step must be > 0");
    if (n_ < 1) throw ConfigError("history: need at least one interval");
    if (values_.size() != static_cast<std::size_t>(n_) + 1)
      throw ConfigError("history: expected N+1 samples");
  }

  static InputHistory from_samples(double step, double newest_time,
                                   std::vector<double> samples,
                                   std::optional<std::pair<double, double>> jump =
                                       std::nullopt) {
    InputHistory h(step, static_cast<int>(samples.size()) - 1, newest_time,
                   std::move(samples));
    if (jump) h.set_jump(jump->first, jump->second);
    return h;
  }

  double step() const { return h_; }
  int num_intervals() const { return n_; }
  double delay() const { return n_ * h_; }
  double newest_time() const { return newest_; }
  double oldest_time() const { return newest_ - delay(); }
  double node_time(int j) const { return newest_ - (n_ - j) * h_; }

  /// Sample at node j (0 = oldest, N = newest); right-continuous value.
  double sample(int j) const { return values_[ring(j)]; }

  /// Left limit at node j: differs from sample(j) only at a registered jump.
  double left_limit(int j) const {
    if (jump_ && std::abs(node_time(j) - jump_->first) < 0.5 * h_)
      return jump_->second;
    return values_[ring(j)];
  }

  /// Marks one grid-aligned node as a discontinuity with the given left
  /// limit; interpolation and quadrature treat the cell ending there as
  /// closing on the left limit.
  void set_jump(double time, double left_value) {
    const double idx = (time - oldest_time()) / h_;
    if (std::abs(idx - std::round(idx)) > 1e-6)
      throw ConfigError("history: jump must sit on a grid node");
    jump_ = {time, left_value};
  }
  void clear_jump() { jump_.reset(); }
  const std::optional<std::pair<double, double>>& jump() const { return jump_; }

  /// Linear interpolation over the stored samples; grid-aligned queries are
  /// exact reads.
  double value_at(double theta) const {
    const double tol = 1e-9 * h_;
    if (theta < oldest_time() - tol || theta > newest_ + tol)
      throw DomainError("history: query at " + std::to_string(theta) +
                        " outside [" + std::to_string(oldest_time()) + ", " +
                        std::to_string(newest_) + "]");
    double s = (theta - oldest_time()) / h_;
    int j = static_cast<int>(std::floor(s));
    j = std::max(0, std::min(j, n_));
    const double frac = s - j;
    if (frac <= 1e-9 || j == n_) return values_[ring(j)];
    return (1.0 - frac) * values_[ring(j)] + frac * left_limit(j + 1);
  }

  /// Overwrites the newest sample (the input decided at the current instant).
  void set_newest(double u) { values_[ring(n_)] = u; }

  /// Advances the window one step: drops the oldest sample and appends `u`
  /// at newest_time + h. A jump that falls out of the interior is forgotten.
  void push(double u) {
    values_[head_] = u;
    head_ = (head_ + 1) % values_.size();
    newest_ += h_;
    if (jump_ && jump_->first <= oldest_time() + 0.5 * h_) jump_.reset();
  }

 private:
  std::size_t ring(int j) const {
    return (head_ + static_cast<std::size_t>(j)) % values_.size();
  }

  double h_;
  int n_;
  double newest_;
  std::vector<double> values_;
  std::size_t head_ = 0;
  std::optional<std::pair<double, double>> jump_;
};

/// Composite-trapezoid evaluation of  integral_a^b e^{M (c - theta)} Bcol
/// u(theta) dtheta  over the history grid, with the kernel evaluated per
/// node. Nodes are a, the grid points strictly inside (a, b), and b; a cell
/// closing on the registered jump uses the left limit there. Error is
/// O(h^2) against the piecewise-linear input model.
inline Eigen::VectorXd history_integral(const InputHistory& hist,
                                        const Eigen::Ref<const Eigen::MatrixXd>& m,
                                        const Eigen::Ref<const Eigen::VectorXd>& bcol,
                                        double c, double a, double b) {
  require_square(m, "history_integral");
  if (m.rows() != bcol.rows())
    throw ConfigError("history_integral: B size mismatch");
  const double h = hist.step();
  const double tol = 1e-9 * h;
  if (a > b + tol || a < hist.oldest_time() - tol || b > hist.newest_time() + tol)
    throw DomainError("history_integral: [a,b] outside history coverage");
  if (c < b - tol) throw DomainError("history_integral: need c >= b");

  Eigen::VectorXd total = Eigen::VectorXd::Zero(m.rows());
  if (b - a < 1e-15) return total;

  // grid nodes strictly inside (a, b)
  int j0 = static_cast<int>(std::ceil((a - hist.oldest_time()) / h - 1e-9));
  int j1 = static_cast<int>(std::floor((b - hist.oldest_time()) / h + 1e-9));
  if (hist.node_time(j0) <= a + tol) ++j0;
  if (hist.node_time(j1) >= b - tol) --j1;

  const int interior = std::max(0, j1 - j0 + 1);
  const int num_nodes = interior + 2;
  std::vector<double> node_t(num_nodes);
  std::vector<Eigen::VectorXd> kb(num_nodes);  // e^{M (b - theta)} Bcol
  node_t[0] = a;
  node_t[num_nodes - 1] = b;
  kb[num_nodes - 1] = bcol;
  if (interior > 0) {
    const Eigen::MatrixXd eh = expm(m, h);
    const double frac = b - hist.node_time(j1);
    Eigen::VectorXd v = frac > tol ? Eigen::VectorXd(expm(m, frac) * bcol)
                                   : Eigen::VectorXd(bcol);
    for (int j = j1; j >= j0; --j) {
      node_t[1 + (j - j0)] = hist.node_time(j);
      kb[1 + (j - j0)] = v;
      if (j > j0) v = eh * v;
    }
    const double gap = hist.node_time(j0) - a;
    kb[0] = gap > tol ? Eigen::VectorXd(expm(m, gap) * kb[1]) : kb[1];
  } else {
    kb[0] = expm(m, b - a) * bcol;
  }

  auto right_value = [&](int idx) {
    return idx == 0 ? hist.value_at(node_t[0]) : hist.sample(j0 + idx - 1);
  };
  auto left_value = [&](int idx) {
    if (idx == num_nodes - 1) {
      if (hist.jump() && std::abs(node_t[idx] - hist.jump()->first) < 0.5 * h)
        return hist.jump()->second;
      return hist.value_at(node_t[idx]);
    }
    return hist.left_limit(j0 + idx - 1);
  };
  for (int cidx = 0; cidx + 1 < num_nodes; ++cidx) {
    const double dt = node_t[cidx + 1] - node_t[cidx];
    if (dt < 1e-15) continue;
    total += 0.5 * dt * (kb[cidx] * right_value(cidx) +
                         kb[cidx + 1] * left_value(cidx + 1));
  }
  if (c - b > tol) total = expm(m, c - b) * total;
  return total;
}

}  // namespace apf
