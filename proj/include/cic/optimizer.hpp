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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cic/model.hpp"

namespace cic {

using Subset = std::vector<std::uint32_t>;

/// C(n, m), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t m);

constexpr std::uint64_t kDefaultSubsetCap = 200000;

/// All m-subsets of {0..n−1} in lexicographic order. Throws Error(validation)
/// when C(n, m) exceeds `cap`; use optimize_by_column_generation() there.
std::vector<Subset> enumerate_subsets(std::size_t n, std::size_t m,
                                      std::uint64_t cap = kDefaultSubsetCap);

/// min Σ c_i p_i  s.t.  Σ p_i = 1,  Σ_{i ∋ j} p_i = M/N (j < N−1),  p ≥ 0.
///
/// Column i is subset `subsets[i]`. The coverage row of the last packet is
/// implied by the others (every column holds exactly M packets) and is not
/// stored; `rows()` is therefore N.
struct LpProblem {
  std::size_t n_packets = 0;
  std::size_t cache_size = 0;
  std::vector<Subset> subsets;
  std::vector<double> costs;

  std::size_t rows() const noexcept { return n_packets; }
  std::size_t columns() const noexcept { return subsets.size(); }
  double coverage() const noexcept {
    return static_cast<double>(cache_size) / static_cast<double>(n_packets);
  }
  /// Right-hand side: {1, M/N, ..., M/N}.
  std::vector<double> rhs() const;
  /// Dense row-major constraint matrix (rows() × columns()); for small
  /// instances and diagnostics.
  std::vector<std::vector<double>> dense_matrix() const;
};

/// Full-cancellation loss of a subset whose cached popularity mass is F:
/// (1−F) / (1 + (1−F)^{−1}/Z₁(T̄)), written as Z u²/(Z u + 1), u = 1−F.
double subset_cost(double cached_mass, double z);

/// Builds the LP over `subsets`; F_i uses compensated summation. Throws if a
/// subset does not have exactly M members (the dropped row would no longer be
/// redundant).
LpProblem build_lp(const PacketLibrary& lib, std::vector<Subset> subsets, std::size_t m,
                   double t_bar, double beta);

enum class LpStatus { optimal, infeasible, numerical_failure };

const char* to_string(LpStatus status);

struct SolverDiagnostics {
  std::size_t iterations = 0;
  std::size_t phase1_iterations = 0;
  std::size_t refactorizations = 0;
  std::size_t basis_size = 0;
  std::size_t columns = 0;
  std::size_t pricing_rounds = 0;  // column generation only
  double max_residual = 0.0;       // worst equality violation, all N+1 rows
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-12;
  double feasibility_tol = 1e-9;
  std::size_t max_iterations = 1000000;
  std::size_t refactor_every = 50;
};

struct OptimizationResult {
  std::size_t n_packets = 0;
  std::size_t cache_size = 0;
  std::vector<CacheRow> rows;  // positive-density subsets only
  double objective = 0.0;
  LpStatus status = LpStatus::numerical_failure;
  std::size_t support_size = 0;
  SolverDiagnostics diagnostics;
  std::string message;

  /// Throws unless status is optimal.
  CachingScheme scheme() const;
};

/// Two-phase revised simplex with Bland's rule. Rows of the result come out
/// in basis order; see canonicalize().
OptimizationResult solve_lp(const LpProblem& lp, const SimplexOptions& options = {});

/// Sorts rows by density descending, ties lexicographic by packet set.
OptimizationResult canonicalize(OptimizationResult result);

/// Enumerate → build → solve → canonicalize, with closed-form shortcuts for
/// M = 0 (one empty subset) and M = N (everything cached, objective 0).
OptimizationResult optimize_caching(const PacketLibrary& lib, std::size_t m, double t_bar,
                                    double beta, const SimplexOptions& options = {},
                                    std::uint64_t cap = kDefaultSubsetCap);

/// Same optimum without enumerating every subset: a restricted master LP
/// seeded with the N cyclic subsets grows by the most negative reduced-cost
/// column, priced exactly by branch and bound, until none is negative.
OptimizationResult optimize_by_column_generation(const PacketLibrary& lib, std::size_t m,
                                                 double t_bar, double beta,
                                                 const SimplexOptions& options = {});

/// Number of positive-density rows caching both a popular packet (rank <= M)
/// and an unpopular one (rank > N/2).
std::size_t popular_unpopular_rows(const OptimizationResult& result);

/// Objective of the uniform density 1/C(N, M) over every subset.
double uniform_density_objective(const PacketLibrary& lib, std::size_t m, double t_bar,
                                 double beta);

}  // namespace cic
