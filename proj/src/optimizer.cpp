/*
   Copyright 2026 The cic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "cic/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cic/error.hpp"
#include "cic/specfun.hpp"
#include "summation.hpp"

namespace cic {

std::uint64_t binomial(std::size_t n, std::size_t m) {
  if (m > n) {
    return 0;
  }
  m = std::min(m, n - m);
  std::uint64_t r = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    // r * (n − m + k) / k stays integral at every step.
    const std::uint64_t num = n - m + k;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = r * num / k;
  }
  return r;
}

std::vector<Subset> enumerate_subsets(std::size_t n, std::size_t m, std::uint64_t cap) {
  if (m > n) {
    fail_validation("enumerate_subsets needs 0 <= m <= n");
  }
  const std::uint64_t count = binomial(n, m);
  if (count > cap) {
    std::ostringstream os;
    os << "C(" << n << ", " << m << ") = " << count << " subsets exceeds the enumeration cap "
       << cap << "; use column generation (optimize_by_column_generation / --column-generation)";
    fail_validation(os.str());
  }
  std::vector<Subset> out;
  out.reserve(static_cast<std::size_t>(count));
  Subset cur(m);
  std::iota(cur.begin(), cur.end(), 0u);
  while (true) {
    out.push_back(cur);
    // Advance to the next combination in lexicographic order.
    std::size_t i = m;
    while (i > 0 && cur[i - 1] == n - m + i - 1) {
      --i;
    }
    if (i == 0) {
      break;
    }
    ++cur[i - 1];
    for (std::size_t k = i; k < m; ++k) {
      cur[k] = cur[k - 1] + 1;
    }
  }
  return out;
}

std::vector<double> LpProblem::rhs() const {
  std::vector<double> b(rows(), coverage());
  b[0] = 1.0;
  return b;
}

std::vector<std::vector<double>> LpProblem::dense_matrix() const {
  std::vector<std::vector<double>> a(rows(), std::vector<double>(columns(), 0.0));
  for (std::size_t c = 0; c < columns(); ++c) {
    a[0][c] = 1.0;
    for (std::uint32_t j : subsets[c]) {
      if (j + 1 < n_packets) {
        a[j + 1][c] = 1.0;
      }
    }
  }
  return a;
}

double subset_cost(double cached_mass, double z) {
  const double u = std::clamp(1.0 - cached_mass, 0.0, 1.0);
  return z * u * u / (z * u + 1.0);
}

LpProblem build_lp(const PacketLibrary& lib, std::vector<Subset> subsets, std::size_t m,
                   double t_bar, double beta) {
  const std::size_t n = lib.size();
  if (m > n) {
    fail_validation("build_lp needs 0 <= M <= N");
  }
  if (subsets.empty()) {
    fail_validation("build_lp needs at least one candidate subset");
  }
  const double z = z1(LaplaceExponent{beta, t_bar});
  LpProblem lp;
  lp.n_packets = n;
  lp.cache_size = m;
  lp.costs.reserve(subsets.size());
  for (Subset& s : subsets) {
    std::sort(s.begin(), s.end());
    // Coverage rows sum to M times the density row only if every column has
    // exactly M distinct members; that is what makes the last row redundant.
    if (s.size() != m || std::adjacent_find(s.begin(), s.end()) != s.end() ||
        (!s.empty() && s.back() >= n)) {
      fail_validation("build_lp: every candidate must be M distinct packets of the library");
    }
    detail::CompensatedSum mass;
    for (std::uint32_t j : s) {
      mass.add(lib[j]);
    }
    lp.costs.push_back(subset_cost(mass.value(), z));
  }
  lp.subsets = std::move(subsets);
  return lp;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

CachingScheme OptimizationResult::scheme() const {
  if (status != LpStatus::optimal) {
    fail_numerical(std::string("optimization did not reach an optimum: ") + to_string(status));
  }
  return CachingScheme(n_packets, cache_size, rows);
}

namespace {

// Revised simplex over the structure of LpProblem. Column c has a 1 in row 0
// and in row j+1 for every member j < N−1.
class Simplex {
 public:
  Simplex(const LpProblem& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt), m_(lp.rows()), n_(lp.columns()), b_(lp.rhs()) {
    rows_of_.resize(n_);
    for (std::size_t c = 0; c < n_; ++c) {
      auto& r = rows_of_[c];
      r.push_back(0);
      for (std::uint32_t j : lp.subsets[c]) {
        if (j + 1 < lp.n_packets) {
          r.push_back(j + 1);
        }
      }
    }
  }

  OptimizationResult run() {
    OptimizationResult res;
    res.n_packets = lp_.n_packets;
    res.cache_size = lp_.cache_size;
    res.diagnostics.columns = n_;

    // Phase 1: artificial identity basis, minimise their sum.
    basis_.resize(m_);
    in_basis_.assign(n_ + m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      in_basis_[n_ + i] = true;
    }
    binv_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m_),
                                      static_cast<Eigen::Index>(m_));
    x_ = Eigen::Map<const Eigen::VectorXd>(b_.data(), static_cast<Eigen::Index>(m_));
    phase_ = 1;
    if (!iterate(res)) {
      return res;
    }
    res.diagnostics.phase1_iterations = iterations_;
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) {
        infeasibility += x_[static_cast<Eigen::Index>(i)];
      }
    }
    if (infeasibility > opt_.feasibility_tol) {
      res.status = LpStatus::infeasible;
      std::ostringstream os;
      os.precision(6);
      os << "phase 1 ended with artificial mass " << infeasibility
         << " (no density vector meets the coverage constraints)";
      res.message = os.str();
      return res;
    }
    drive_out_artificials();

    phase_ = 2;
    if (!iterate(res)) {
      return res;
    }
    refactor();
    finish(res);
    return res;
  }

  // Dual values of the final basis (phase-2 costs); artificials cost 0.
  Eigen::VectorXd duals() const {
    Eigen::VectorXd cb(static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      cb[static_cast<Eigen::Index>(i)] = basis_[i] < n_ ? lp_.costs[basis_[i]] : 0.0;
    }
    return binv_.transpose() * cb;
  }

 private:
  double cost(std::size_t var) const {
    if (phase_ == 1) {
      return var >= n_ ? 1.0 : 0.0;
    }
    return var >= n_ ? 0.0 : lp_.costs[var];
  }

  bool iterate(OptimizationResult& res) {
    Eigen::VectorXd cb(static_cast<Eigen::Index>(m_));
    Eigen::VectorXd w(static_cast<Eigen::Index>(m_));
    while (true) {
      if (iterations_ >= opt_.max_iterations) {
        res.status = LpStatus::numerical_failure;
        res.message = "simplex iteration cap reached";
        res.diagnostics.iterations = iterations_;
        return false;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        cb[static_cast<Eigen::Index>(i)] = cost(basis_[i]);
      }
      const Eigen::VectorXd y = binv_.transpose() * cb;

      // Bland: lowest-index column with negative reduced cost.
      std::size_t entering = n_;
      for (std::size_t c = 0; c < n_; ++c) {
        if (in_basis_[c]) {
          continue;
        }
        double d = cost(c);
        for (std::size_t r : rows_of_[c]) {
          d -= y[static_cast<Eigen::Index>(r)];
        }
        if (d < -opt_.optimality_tol) {
          entering = c;
          break;
        }
      }
      if (entering == n_) {
        return true;
      }

      w.setZero();
      for (std::size_t r : rows_of_[entering]) {
        w += binv_.col(static_cast<Eigen::Index>(r));
      }
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double wi = w[static_cast<Eigen::Index>(i)];
        if (wi <= opt_.pivot_tol) {
          continue;
        }
        const double ratio = std::max(0.0, x_[static_cast<Eigen::Index>(i)]) / wi;
        if (leave == m_) {
          best = ratio;
          leave = i;
          continue;
        }
        const double slack = 1e-12 * std::max(1.0, best);
        if (ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + slack && basis_[i] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave == m_) {
        res.status = LpStatus::numerical_failure;
        res.message = "unbounded direction encountered (cannot happen for a valid caching LP)";
        res.diagnostics.iterations = iterations_;
        return false;
      }
      pivot(leave, entering, w);
      ++iterations_;
      if (iterations_ % opt_.refactor_every == 0) {
        refactor();
      }
    }
  }

  void pivot(std::size_t leave, std::size_t entering, const Eigen::VectorXd& w) {
    const auto p = static_cast<Eigen::Index>(leave);
    const double wp = w[p];
    const double theta = std::max(0.0, x_[p]) / wp;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m_); ++i) {
      if (i != p) {
        x_[i] -= w[i] * theta;
      }
    }
    x_[p] = theta;
    binv_.row(p) /= wp;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m_); ++i) {
      if (i != p && w[i] != 0.0) {
        binv_.row(i) -= w[i] * binv_.row(p);
      }
    }
    in_basis_[basis_[leave]] = false;
    basis_[leave] = entering;
    in_basis_[entering] = true;
  }

  void refactor() {
    const auto m = static_cast<Eigen::Index>(m_);
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t var = basis_[i];
      if (var >= n_) {
        basis_matrix(static_cast<Eigen::Index>(var - n_), static_cast<Eigen::Index>(i)) = 1.0;
      } else {
        for (std::size_t r : rows_of_[var]) {
          basis_matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = 1.0;
        }
      }
    }
    binv_ = basis_matrix.partialPivLu().inverse();
    x_ = binv_ * Eigen::Map<const Eigen::VectorXd>(b_.data(), m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::fabs(x_[i]) < 1e-14) {
        x_[i] = 0.0;
      }
    }
    ++refactorizations_;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) {
        continue;
      }
      const auto row = binv_.row(static_cast<Eigen::Index>(i));
      for (std::size_t c = 0; c < n_; ++c) {
        if (in_basis_[c]) {
          continue;
        }
        double v = 0.0;
        for (std::size_t r : rows_of_[c]) {
          v += row[static_cast<Eigen::Index>(r)];
        }
        if (std::fabs(v) > opt_.pivot_tol) {
          Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_));
          for (std::size_t r : rows_of_[c]) {
            w += binv_.col(static_cast<Eigen::Index>(r));
          }
          pivot(i, c, w);
          ++iterations_;
          break;
        }
      }
      // A row with no structural entry is redundant; its artificial stays
      // basic at level zero and never moves.
    }
  }

  void finish(OptimizationResult& res) {
    res.diagnostics.iterations = iterations_;
    res.diagnostics.refactorizations = refactorizations_;
    res.diagnostics.basis_size = m_;
    detail::CompensatedSum objective;
    std::vector<double> density(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double v = x_[static_cast<Eigen::Index>(i)];
      if (basis_[i] < n_ && v > 1e-15) {
        density[basis_[i]] = v;
      }
    }
    // Residuals over every constraint, including the dropped coverage row.
    std::vector<detail::CompensatedSum> coverage(lp_.n_packets);
    detail::CompensatedSum total;
    for (std::size_t c = 0; c < n_; ++c) {
      if (density[c] == 0.0) {
        continue;
      }
      total.add(density[c]);
      objective.add(density[c] * lp_.costs[c]);
      for (std::uint32_t j : lp_.subsets[c]) {
        coverage[j].add(density[c]);
      }
      res.rows.push_back({lp_.subsets[c], density[c]});
    }
    double residual = std::fabs(total.value() - 1.0);
    for (const auto& q : coverage) {
      residual = std::max(residual, std::fabs(q.value() - lp_.coverage()));
    }
    res.diagnostics.max_residual = residual;
    res.objective = objective.value();
    res.support_size = res.rows.size();
    if (residual > opt_.feasibility_tol) {
      res.status = LpStatus::numerical_failure;
      std::ostringstream os;
      os.precision(3);
      os << "optimal basis violates the constraints by " << residual;
      res.message = os.str();
      return;
    }
    res.status = LpStatus::optimal;
  }

  const LpProblem& lp_;
  SimplexOptions opt_;
  std::size_t m_;
  std::size_t n_;
  std::vector<double> b_;
  std::vector<std::vector<std::size_t>> rows_of_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd x_;
  int phase_ = 1;
  std::size_t iterations_ = 0;
  std::size_t refactorizations_ = 0;
};

OptimizationResult trivial_result(const PacketLibrary& lib, std::size_t m, double t_bar,
                                  double beta) {
  OptimizationResult res;
  res.n_packets = lib.size();
  res.cache_size = m;
  Subset s(m);
  std::iota(s.begin(), s.end(), 0u);
  detail::CompensatedSum mass;
  for (std::uint32_t j : s) {
    mass.add(lib[j]);
  }
  res.rows.push_back({s, 1.0});
  res.objective = m == lib.size() ? 0.0 : subset_cost(mass.value(), z1({beta, t_bar}));
  res.status = LpStatus::optimal;
  res.support_size = 1;
  res.diagnostics.columns = 1;
  return res;
}

void check_cache_size(const PacketLibrary& lib, std::size_t m) {
  if (m > lib.size()) {
    fail_validation("cache size M must not exceed the library size N");
  }
}

}  // namespace

OptimizationResult solve_lp(const LpProblem& lp, const SimplexOptions& options) {
  if (lp.n_packets == 0 || lp.cache_size > lp.n_packets || lp.columns() == 0 ||
      lp.costs.size() != lp.columns()) {
    fail_validation("solve_lp: malformed LP");
  }
  for (double c : lp.costs) {
    if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
      fail_validation("solve_lp: costs must be finite and within [0, 1]");
    }
  }
  Simplex simplex(lp, options);
  return simplex.run();
}

OptimizationResult canonicalize(OptimizationResult result) {
  std::stable_sort(result.rows.begin(), result.rows.end(), canonical_row_order);
  return result;
}

OptimizationResult optimize_caching(const PacketLibrary& lib, std::size_t m, double t_bar,
                                    double beta, const SimplexOptions& options,
                                    std::uint64_t cap) {
  check_cache_size(lib, m);
  if (m == 0 || m == lib.size()) {
    return trivial_result(lib, m, t_bar, beta);
  }
  const LpProblem lp = build_lp(lib, enumerate_subsets(lib.size(), m, cap), m, t_bar, beta);
  OptimizationResult res = solve_lp(lp, options);
  if (res.status == LpStatus::infeasible) {
    // The uniform density over all subsets is always feasible for 0 < M < N.
    fail_numerical("simplex reported an infeasible caching LP: " + res.message);
  }
  return canonicalize(std::move(res));
}

namespace {

// Exact pricing: argmin over M-subsets of cost(F_S) − y0 − Σ_{j∈S} ŷ_j.
class Pricer {
 public:
  Pricer(const PacketLibrary& lib, std::size_t m, double z, std::vector<double> yhat, double y0)
      : lib_(lib), m_(m), z_(z), yhat_(std::move(yhat)), y0_(y0) {
    const std::size_t n = lib.size();
    prefix_.assign(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      prefix_[j + 1] = prefix_[j] + lib[j];
    }
    // top_[s][k] = sum of the k largest ŷ over packets s..n−1.
    top_.assign(n + 1, std::vector<double>(m + 1, 0.0));
    std::vector<double> best;
    for (std::size_t s = n; s-- > 0;) {
      best.push_back(yhat_[s]);
      std::sort(best.begin(), best.end(), std::greater<>());
      if (best.size() > m) {
        best.pop_back();
      }
      double acc = 0.0;
      for (std::size_t k = 1; k <= m; ++k) {
        if (k <= best.size()) {
          acc += best[k - 1];
        }
        top_[s][k] = acc;
      }
    }
  }

  double run(Subset& best_subset) {
    best_ = std::numeric_limits<double>::infinity();
    current_.clear();
    descend(0, 0.0, 0.0);
    best_subset = best_subset_;
    return best_;
  }

 private:
  void descend(std::size_t start, double mass, double ysum) {
    const std::size_t depth = current_.size();
    if (depth == m_) {
      const double rc = subset_cost(mass, z_) - y0_ - ysum;
      if (rc < best_) {
        best_ = rc;
        best_subset_ = current_;
      }
      return;
    }
    const std::size_t remaining = m_ - depth;
    const std::size_t n = lib_.size();
    for (std::size_t j = start; j + remaining <= n; ++j) {
      // Cost falls as cached mass grows, and the largest reachable mass uses
      // the next `remaining` packets (library is sorted descending).
      const double max_mass = mass + prefix_[j + remaining] - prefix_[j];
      const double bound = subset_cost(max_mass, z_) - y0_ - ysum - top_[j][remaining];
      if (bound >= best_) {
        continue;
      }
      current_.push_back(static_cast<std::uint32_t>(j));
      descend(j + 1, mass + lib_[j], ysum + yhat_[j]);
      current_.pop_back();
    }
  }

  const PacketLibrary& lib_;
  std::size_t m_;
  double z_;
  std::vector<double> yhat_;
  double y0_;
  std::vector<double> prefix_;
  std::vector<std::vector<double>> top_;
  Subset current_;
  Subset best_subset_;
  double best_ = 0.0;
};

}  // namespace

OptimizationResult optimize_by_column_generation(const PacketLibrary& lib, std::size_t m,
                                                 double t_bar, double beta,
                                                 const SimplexOptions& options) {
  check_cache_size(lib, m);
  const std::size_t n = lib.size();
  if (m == 0 || m == n) {
    return trivial_result(lib, m, t_bar, beta);
  }
  const double z = z1(LaplaceExponent{beta, t_bar});
  std::vector<Subset> pool;
  for (std::size_t s = 0; s < n; ++s) {
    Subset c;
    for (std::size_t k = 0; k < m; ++k) {
      c.push_back(static_cast<std::uint32_t>((s + k) % n));
    }
    std::sort(c.begin(), c.end());
    pool.push_back(std::move(c));
  }
  std::size_t rounds = 0;
  std::size_t total_iterations = 0;
  while (true) {
    const LpProblem lp = build_lp(lib, pool, m, t_bar, beta);
    Simplex simplex(lp, options);
    OptimizationResult res = simplex.run();
    total_iterations += res.diagnostics.iterations;
    ++rounds;
    if (res.status != LpStatus::optimal) {
      res.diagnostics.pricing_rounds = rounds;
      return res;
    }
    const Eigen::VectorXd y = simplex.duals();
    std::vector<double> yhat(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      yhat[j] = y[static_cast<Eigen::Index>(j + 1)];
    }
    Pricer pricer(lib, m, z, std::move(yhat), y[0]);
    Subset entering;
    const double reduced = pricer.run(entering);
    if (reduced >= -options.optimality_tol ||
        std::find(pool.begin(), pool.end(), entering) != pool.end()) {
      res.diagnostics.pricing_rounds = rounds;
      res.diagnostics.iterations = total_iterations;
      res.diagnostics.columns = pool.size();
      return canonicalize(std::move(res));
    }
    pool.push_back(std::move(entering));
  }
}

std::size_t popular_unpopular_rows(const OptimizationResult& result) {
  std::size_t count = 0;
  const double half = static_cast<double>(result.n_packets) / 2.0;
  for (const CacheRow& row : result.rows) {
    if (row.density <= 0.0) {
      continue;
    }
    bool popular = false;
    bool unpopular = false;
    for (std::uint32_t j : row.packets) {
      const std::size_t rank = j + 1;
      popular = popular || rank <= result.cache_size;
      unpopular = unpopular || static_cast<double>(rank) > half;
    }
    count += (popular && unpopular) ? 1 : 0;
  }
  return count;
}

double uniform_density_objective(const PacketLibrary& lib, std::size_t m, double t_bar,
                                 double beta) {
  check_cache_size(lib, m);
  const LpProblem lp = build_lp(lib, enumerate_subsets(lib.size(), m), m, t_bar, beta);
  detail::CompensatedSum s;
  for (double c : lp.costs) {
    s.add(c);
  }
  return s.value() / static_cast<double>(lp.columns());
}

}  // namespace cic
