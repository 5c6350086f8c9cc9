#include "phipart/estimator.hpp"

#include "phipart/error.hpp"

#include <cmath>
#include <numeric>

namespace phipart {

EstimateResult estimate_divergence(const SampleMatrix& samples_p, const SampleMatrix& samples_q, std::size_t m0,
                                   const PhiFamily& family, const EstimateOptions& options) {
    if (!samples_p.empty() && samples_p.dim() != samples_q.dim()) {
        throw DimensionMismatch("P and Q samples differ in dimension");
    }
    const Partition partition = build_partition(samples_q, m0, options.partition);
    return estimate_on_partition(partition, samples_p, samples_q.rows(), family, options.unweighted);
}

EstimateResult estimate_on_partition(const Partition& partition, const SampleMatrix& samples_p, std::size_t n2,
                                     const PhiFamily& family, bool unweighted) {
    if (samples_p.empty()) throw BadParams("no P samples");
    const auto p_counts = cell_counts(partition, samples_p);
    const std::size_t m = partition.size();
    const std::size_t n1 = samples_p.rows();
    const double weight = 1.0 / static_cast<double>(m);

    EstimateResult result;
    result.n1 = n1;
    result.n2 = n2;
    result.m = m;
    result.family = family.name();
    result.per_cell.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        // m * p_i and n1 are exact integers in double, so p_i = n1/m gives exactly 1
        const double ratio = static_cast<double>(p_counts[i]) * static_cast<double>(m) / static_cast<double>(n1);
        const double phi = family(ratio);
        const double contribution = unweighted ? phi : phi * weight;
        result.per_cell.push_back({i, p_counts[i], n2 / m, weight, ratio, contribution});
        result.value += contribution;
    }
    return result;
}

EstimateResult estimate_with_partition(const Partition& partition, std::span<const std::size_t> p_counts,
                                       std::size_t n1, const PhiFamily& family, std::span<const double> q_masses) {
    const std::size_t m = partition.size();
    if (p_counts.size() != m || q_masses.size() != m) {
        throw DimensionMismatch("counts and masses must have one entry per cell");
    }
    if (n1 == 0) throw BadParams("no P samples");
    double total = 0.0;
    for (double w : q_masses) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw BadParams("cell masses must be finite and nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw BadParams("cell masses must sum to 1, got " + std::to_string(total));

    EstimateResult result;
    result.n1 = n1;
    result.m = m;
    result.family = family.name();
    result.per_cell.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double p_mass = static_cast<double>(p_counts[i]) / static_cast<double>(n1);
        if (q_masses[i] == 0.0) {
            if (p_counts[i] > 0) {
                throw ZeroMass("cell " + std::to_string(i) + " has zero reference mass but holds P samples");
            }
            result.per_cell.push_back({i, 0, 0, 0.0, 0.0, 0.0});
            continue;
        }
        const double ratio = p_mass / q_masses[i];
        const double contribution = family(ratio) * q_masses[i];
        result.per_cell.push_back({i, p_counts[i], 0, q_masses[i], ratio, contribution});
        result.value += contribution;
    }
    return result;
}

EstimateResult estimate_with_partition(const Partition& partition, const SampleMatrix& samples_p,
                                       const PhiFamily& family, std::span<const double> q_masses) {
    const auto counts = cell_counts(partition, samples_p);
    return estimate_with_partition(partition, counts, samples_p.rows(), family, q_masses);
}

double discretized_divergence(std::span<const double> p_masses, std::span<const double> q_masses,
                              const PhiFamily& family) {
    if (p_masses.size() != q_masses.size()) throw DimensionMismatch("mass vectors differ in length");
    double value = 0.0;
    for (std::size_t i = 0; i < p_masses.size(); ++i) {
        if (q_masses[i] == 0.0) {
            if (p_masses[i] > 0.0) {
                throw ZeroMass("cell " + std::to_string(i) + " has zero Q mass but positive P mass");
            }
            continue;
        }
        value += family(p_masses[i] / q_masses[i]) * q_masses[i];
    }
    return value;
}

} // namespace phipart
