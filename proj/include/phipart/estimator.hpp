#pragma once

#include "phipart/partitioner.hpp"
#include "phipart/phi_family.hpp"
#include "phipart/samples.hpp"

#include <span>
#include <string>
#include <vector>

namespace phipart {

struct CellContribution {
    std::size_t index;
    std::size_t p_count;
    std::size_t q_count;
    double q_mass;       // weight of the cell (1/m for the empirical estimator)
    double ratio;        // P_n(I) / q_mass
    double contribution; // phi(ratio) * q_mass
};

struct EstimateResult {
    double value = 0.0;
    std::vector<CellContribution> per_cell;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t m = 0;
    std::string family;
};

struct EstimateOptions {
    PartitionOptions partition;
    /// Drops the Q_n(I) weight: sum_i phi(P_n(I_i) / Q_n(I_i)). Diagnostic only;
    /// it does not approximate the divergence integral.
    bool unweighted = false;
};

/// Builds the equal-mass partition from samples_q, counts samples_p per cell
/// and returns sum_i phi(m * p_i / n1) / m.
EstimateResult estimate_divergence(const SampleMatrix& samples_p, const SampleMatrix& samples_q, std::size_t m0,
                                   const PhiFamily& family, const EstimateOptions& options = {});

/// The empirical estimator over an already built partition, n2 being the
/// number of Q samples it was built from.
EstimateResult estimate_on_partition(const Partition& partition, const SampleMatrix& samples_p, std::size_t n2,
                                     const PhiFamily& family, bool unweighted = false);

/// Evaluates sum_i phi((p_i / n1) / w_i) * w_i over an existing partition
/// with arbitrary cell weights w (e.g. true Q masses). Cells with w_i = 0 and
/// p_i = 0 contribute nothing; w_i = 0 with p_i > 0 throws ZeroMass.
EstimateResult estimate_with_partition(const Partition& partition, std::span<const std::size_t> p_counts,
                                       std::size_t n1, const PhiFamily& family, std::span<const double> q_masses);

EstimateResult estimate_with_partition(const Partition& partition, const SampleMatrix& samples_p,
                                       const PhiFamily& family, std::span<const double> q_masses);

/// sum_i phi(P(I_i) / Q(I_i)) Q(I_i) from two vectors of cell probabilities.
double discretized_divergence(std::span<const double> p_masses, std::span<const double> q_masses,
                              const PhiFamily& family);

} // namespace phipart
