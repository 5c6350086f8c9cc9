#pragma once

#include "phipart/geometry.hpp"
#include "phipart/samples.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace phipart {

struct PartitionOptions {
    /// When set, every coordinate is perturbed by Uniform(-sigma, sigma) noise
    /// before splitting, which breaks ties between duplicate values.
    std::optional<double> jitter_sigma;
    std::uint64_t jitter_seed = 0;
    /// Called for every rectangle produced at each recursion depth k = 1..d,
    /// in the order the splits are made.
    std::function<void(std::size_t depth, const HyperRectangle&)> on_split;
};

/// Equal-mass recursive partition of R^d into m0^d cells under the empirical
/// measure of `samples`. At depth k every (k-1)-level cell is cut along
/// dimension k at the order statistics j*n_cell/m0, j = 1..m0-1.
///
/// Throws DimensionMismatch for d = 0, IndivisibleSampleCount unless
/// m0^d divides n and n >= m0^d, and DuplicateOverflow if a tie straddles a cut.
Partition build_partition(const SampleMatrix& samples, std::size_t m0,
                          const PartitionOptions& options = {});

/// Number of samples falling in each cell.
std::vector<std::size_t> cell_counts(const Partition& partition, const SampleMatrix& samples);

/// Probability of a cell under the reference measure.
using CellMeasure = std::function<double(const HyperRectangle&)>;

/// Sum over cells of |empirical mass - true mass|.
double partition_l1_error(const Partition& partition, const SampleMatrix& samples,
                          const CellMeasure& true_mass);

struct CellClasses {
    std::vector<std::size_t> boundary;  // cells meeting the boundary of [-R, R]^d
    std::vector<std::size_t> outside;   // cells disjoint from [-R, R]^d
    std::vector<std::size_t> oversized; // cells inside [-R, R]^d with long edges
    double edge_threshold = 0.0;
};

/// Edge-length threshold m^{-(2d+1)/(2d(d+1))}.
double oversize_threshold(double m, std::size_t d);

/// Splits cell indices by their position relative to H_R = [-R, R]^d.
/// A cell that both meets the boundary and lies inside H_R is reported
/// only as a boundary cell, so the three sets are disjoint.
CellClasses classify_cells(const Partition& partition, double R, double m);

/// Convenience overload using m = partition.size().
CellClasses classify_cells(const Partition& partition, double R);

/// Number of cells with at least one unbounded side.
std::size_t count_infinitely_large(const Partition& partition);

} // namespace phipart
