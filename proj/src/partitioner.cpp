#include "phipart/partitioner.hpp"

#include "phipart/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace phipart {

namespace {

struct Node {
    std::vector<std::size_t> members;
    std::vector<Interval> prefix;
};

} // namespace

Partition build_partition(const SampleMatrix& samples, std::size_t m0, const PartitionOptions& options) {
    const std::size_t d = samples.dim();
    const std::size_t n = samples.rows();
    if (d == 0) throw DimensionMismatch("samples have dimension 0");
    if (m0 == 0) throw BadParams("m0 must be positive");
    const std::size_t m = int_pow(m0, d);
    if (n < m || n % m != 0) {
        throw IndivisibleSampleCount("m = " + std::to_string(m) + " must divide n = " + std::to_string(n) +
                                     " with n >= m");
    }

    std::vector<double> coords = samples.values();
    if (options.jitter_sigma) {
        const double sigma = *options.jitter_sigma;
        if (!(sigma > 0.0) || !std::isfinite(sigma)) throw BadParams("jitter sigma must be positive");
        std::mt19937_64 rng(options.jitter_seed);
        std::uniform_real_distribution<double> noise(-sigma, sigma);
        for (double& c : coords) c += noise(rng);
    }
    auto coord = [&](std::size_t i, std::size_t k) { return coords[i * d + k]; };

    Partition::SplitTable splits(d);
    std::vector<Node> level(1);
    level[0].members.resize(n);
    std::iota(level[0].members.begin(), level[0].members.end(), std::size_t{0});

    std::vector<double> sorted;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Node> next;
        next.reserve(level.size() * m0);
        splits[k].reserve(level.size());
        for (auto& node : level) {
            auto& members = node.members;
            std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
                const double va = coord(a, k);
                const double vb = coord(b, k);
                return va < vb || (va == vb && a < b);
            });
            sorted.resize(members.size());
            for (std::size_t i = 0; i < members.size(); ++i) sorted[i] = coord(members[i], k);

            const std::size_t slab_size = members.size() / m0;
            std::vector<double> cuts;
            cuts.reserve(m0 - 1);
            for (std::size_t j = 1; j < m0; ++j) {
                const double cut = sorted[j * slab_size - 1];
                if (!(cut < sorted[j * slab_size])) {
                    throw DuplicateOverflow("tied value " + std::to_string(cut) + " straddles cut " +
                                            std::to_string(j) + " along dimension " + std::to_string(k + 1) +
                                            "; use jitter to break ties");
                }
                cuts.push_back(cut);
            }

            for (std::size_t j = 0; j < m0; ++j) {
                Node child;
                child.members.assign(members.begin() + static_cast<std::ptrdiff_t>(j * slab_size),
                                     members.begin() + static_cast<std::ptrdiff_t>((j + 1) * slab_size));
                child.prefix = node.prefix;
                child.prefix.emplace_back(j == 0 ? ExtReal::neg_inf() : ExtReal::finite(cuts[j - 1]),
                                          j + 1 == m0 ? ExtReal::pos_inf() : ExtReal::finite(cuts[j]));
                if (options.on_split) {
                    std::vector<Interval> sides = child.prefix;
                    sides.resize(d, Interval::real_line());
                    options.on_split(k + 1, HyperRectangle(std::move(sides)));
                }
                next.push_back(std::move(child));
            }
            splits[k].push_back(std::move(cuts));
        }
        level = std::move(next);
    }
    return Partition(d, m0, std::move(splits));
}

std::vector<std::size_t> cell_counts(const Partition& partition, const SampleMatrix& samples) {
    std::vector<std::size_t> counts(partition.size(), 0);
    if (samples.empty()) return counts;
    if (samples.dim() != partition.dim()) throw DimensionMismatch("sample dimension differs from partition");
    for (std::size_t i = 0; i < samples.rows(); ++i) ++counts[partition.locate(samples.row(i))];
    return counts;
}

double partition_l1_error(const Partition& partition, const SampleMatrix& samples, const CellMeasure& true_mass) {
    const auto counts = cell_counts(partition, samples);
    const double n = static_cast<double>(samples.rows());
    double err = 0.0;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const double mu = true_mass(partition.cell(i));
        if (!std::isfinite(mu) || mu < 0.0 || mu > 1.0 + 1e-12) {
            throw OracleFailure("cell measure returned " + std::to_string(mu) + " for cell " + std::to_string(i));
        }
        const double emp = n > 0 ? static_cast<double>(counts[i]) / n : 0.0;
        err += std::abs(emp - mu);
    }
    return err;
}

double oversize_threshold(double m, std::size_t d) {
    const double dd = static_cast<double>(d);
    return std::pow(m, -(2.0 * dd + 1.0) / (2.0 * dd * (dd + 1.0)));
}

CellClasses classify_cells(const Partition& partition, double R, double m) {
    if (!(R > 0.0)) throw BadRange("R must be positive");
    CellClasses out;
    out.edge_threshold = oversize_threshold(m, partition.dim());
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const auto& cell = partition.cell(i);
        bool meets_cube = true;    // every side intersects [-R, R]
        bool inside = true;        // every side within [-R, R]
        bool touches_face = false; // some side contains R or -R
        for (const auto& side : cell.sides()) {
            // (a, b] meets [-R, R] iff a < R and b >= -R
            const bool meets = side.lower() < R && !(side.upper() < -R);
            meets_cube = meets_cube && meets;
            inside = inside && !(side.lower() < -R) && !(R < side.upper());
            touches_face = touches_face || side.contains(R) || side.contains(-R);
        }
        if (!meets_cube) {
            out.outside.push_back(i);
        } else if (touches_face) {
            out.boundary.push_back(i);
        } else if (inside && max_edge_length(cell) >= out.edge_threshold) {
            out.oversized.push_back(i);
        }
    }
    return out;
}

CellClasses classify_cells(const Partition& partition, double R) {
    return classify_cells(partition, R, static_cast<double>(partition.size()));
}

std::size_t count_infinitely_large(const Partition& partition) {
    return static_cast<std::size_t>(std::count_if(partition.cells().begin(), partition.cells().end(),
                                                  [](const HyperRectangle& c) { return c.is_infinitely_large(); }));
}

} // namespace phipart
