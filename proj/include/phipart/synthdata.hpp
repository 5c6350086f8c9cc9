#pragma once

#include "phipart/geometry.hpp"
#include "phipart/phi_family.hpp"
#include "phipart/samples.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace phipart {

enum class DistKind { GaussianDiag, Exponential, Uniform, Chi2, Cauchy };

std::string_view to_string(DistKind kind);
DistKind parse_dist_kind(std::string_view name);

/// Product-form benchmark distribution. Per-axis parameters by kind:
///   GaussianDiag  loc = mean, scale = standard deviation
///   Exponential   loc = left end of support, scale = 1/rate
///   Uniform       lower, upper
///   Chi2          dof
///   Cauchy        loc = median, scale = half width
struct DistributionSpec {
    DistKind kind = DistKind::GaussianDiag;
    std::vector<double> loc;
    std::vector<double> scale;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> dof;

    static DistributionSpec gaussian(std::vector<double> mean, std::vector<double> sd);
    static DistributionSpec exponential(std::vector<double> scale, std::vector<double> loc = {});
    static DistributionSpec uniform(std::vector<double> lower, std::vector<double> upper);
    static DistributionSpec chi2(std::vector<double> dof);
    static DistributionSpec cauchy(std::vector<double> loc, std::vector<double> scale);

    std::size_t dim() const;
    /// Throws BadParams on inconsistent or out-of-range parameters.
    void validate() const;

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

double log_density(const DistributionSpec& spec, std::span<const double> x);
double marginal_cdf(const DistributionSpec& spec, std::size_t axis, double x);
double marginal_sf(const DistributionSpec& spec, std::size_t axis, double x);

/// n i.i.d. points. Same seed gives the same matrix; distinct seeds give
/// independent streams.
SampleMatrix draw(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

/// Exact probability of a (possibly unbounded) rectangle.
double cell_mass(const DistributionSpec& spec, const HyperRectangle& rect);

/// Closed-form divergence where one is known: any pair with p == q; Gaussian
/// pairs (KL, Hellinger, chi2 when 2 s_q^2 > s_p^2 on every axis, TV when the
/// scales coincide); nested uniform boxes; exponential KL and Hellinger with
/// shared locations. nullopt otherwise.
std::optional<double> closed_form_divergence(const DistributionSpec& p, const DistributionSpec& q,
                                             const PhiFamily& family);

struct QuadratureResult {
    double value;
    double p_tail_mass; // P-mass outside the integration box
    double q_tail_mass;
    std::size_t nodes;
};

/// Tensor-product midpoint rule for integral of phi(p/q) q over `box`. Each
/// axis grid is split at support breakpoints inside the box, so piecewise
/// densities are integrated without straddling a jump. Requires d <= 3 and
/// grid >= 64. Throws ZeroDensity where q vanishes but p does not.
QuadratureResult quadrature_divergence(const DistributionSpec& p, const DistributionSpec& q,
                                       const PhiFamily& family, const HyperRectangle& box, std::size_t grid);

/// Truncation box covering both distributions (Gaussian: +-10 sd; exponential
/// and chi2: 40 scale units to the right; Cauchy: +-1e4 scales; uniform: support).
HyperRectangle default_quadrature_box(const DistributionSpec& p, const DistributionSpec& q);
std::size_t default_quadrature_grid(std::size_t d);

/// Closed form when available, else quadrature at the default box and grid.
/// Throws OracleFailure when neither applies.
double oracle_divergence(const DistributionSpec& p, const DistributionSpec& q, const PhiFamily& family);

/// Exact P and Q masses of every cell of a partition.
std::vector<double> partition_masses(const DistributionSpec& spec, const Partition& partition);

} // namespace phipart
