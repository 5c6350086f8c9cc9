#pragma once

#include "phipart/synthdata.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace phipart {

struct ExperimentConfig {
    DistributionSpec p_spec;
    DistributionSpec q_spec;
    std::string family = "kl";
    std::vector<std::size_t> n_schedule;
    std::vector<std::size_t> m0_schedule;
    std::size_t replications = 1;
    std::uint64_t base_seed = 0;
    bool decompose = true;
    std::size_t threads = 0; // 0: hardware concurrency

    /// Throws ConfigError on empty schedules, zero replications or an
    /// (n, m0) pair with m0^d not dividing n.
    void validate() const;
};

/// Per-replication quantities of the error split
/// |D_hat - D| <= T1 + T2, T1 = |D_disc - D|, T2 = |D_hat - D_disc|,
/// where D_disc = sum_i phi(P(I_i)/Q(I_i)) Q(I_i) uses exact cell masses.
struct ReplicationRecord {
    std::uint64_t seed;
    double estimate;
    double discretized; // NaN when decompose is off
    double t1;
    double t2;
};

struct ConvergenceRow {
    std::size_t n = 0;
    std::size_t m0 = 0;
    std::size_t m = 0;
    double mean_estimate = 0.0;
    double std_estimate = 0.0;
    double mean_abs_error = 0.0;
    double mean_t1 = 0.0;
    double mean_t2 = 0.0;
    double oracle_value = 0.0;
    std::vector<ReplicationRecord> replications;
};

/// Seeds for replication k: P samples from stream 2(base+k), Q from 2(base+k)+1.
std::uint64_t replication_p_seed(std::uint64_t base_seed, std::size_t k);
std::uint64_t replication_q_seed(std::uint64_t base_seed, std::size_t k);

/// Replications run concurrently; results are aggregated in replication
/// order so output does not depend on scheduling. Rows sorted by (n, m).
std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config);

/// Mean, sample standard deviation (n-1) of a sequence.
std::pair<double, double> mean_and_std(const std::vector<double>& values);

enum class BoundSuite { Gamma, PartitionError, Growth, Chernoff };
std::string_view to_string(BoundSuite suite);
BoundSuite parse_bound_suite(std::string_view name);

struct BoundCheck {
    std::string name;
    double observed;
    double bound;
    bool pass;
    std::string detail;
};

struct BoundSuiteReport {
    std::string suite;
    std::size_t seeds = 0;
    std::vector<BoundCheck> checks;

    std::size_t violations() const;
    bool passed() const { return violations() == 0; }
};

/// Deterministic cell-class bounds: over `seeds` Gaussian Q sample sets,
/// d in {1, 2}, m0 in 2..8, R in {1, 3, 10}, the counts of boundary cells,
/// infinitely large cells and oversized interior cells never exceed their bounds.
BoundSuiteReport verify_gamma_deterministic(std::size_t seeds, std::uint64_t base_seed = 0);

/// Outside-cell concentration: with R = tail_radius(eps2) and n just above
/// n_for_gamma2(eps2, delta), the fraction of seeds with |outside| >= eps2 m
/// stays below delta.
BoundSuiteReport verify_gamma2(std::size_t seeds, double eps2 = 0.2, double delta = 0.2, std::uint64_t base_seed = 0);

/// Partition L1 error at the relaxed accuracy eps = 0.95 (delta = 0.05, d = 1,
/// m = 4) with n just above N*: fraction of seeds with error > eps stays below delta.
BoundSuiteReport verify_partition_error(std::size_t seeds, std::uint64_t base_seed = 0);

/// Number of distinct labelled partitions of `points` collinear points induced
/// by m0 - 1 cuts placed anywhere on the line, counted by exhaustive enumeration.
std::size_t enumerate_induced_partitions_1d(std::size_t points, std::size_t m0);

/// Enumerated induced-partition counts against exp(log_growth_bound) for
/// d = 1, n <= 5, m0 <= 3, plus membership of partitions produced by the
/// splitter on random inputs in the enumerated family.
BoundSuiteReport verify_growth(std::size_t seeds, std::uint64_t base_seed = 0);

/// Binomial tail frequencies against chernoff_tail over a threshold grid,
/// with 100 * seeds Monte Carlo repetitions per configuration.
BoundSuiteReport verify_chernoff(std::size_t seeds, std::uint64_t base_seed = 0);

BoundSuiteReport run_bound_suite(BoundSuite suite, std::size_t seeds, std::uint64_t base_seed = 0);

} // namespace phipart
