#pragma once

#include "phipart/geometry.hpp"
#include "phipart/phi_family.hpp"
#include "phipart/samples.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace phipart {

/// Tail and smoothness parameters of the densities: tail mass beyond radius r
/// below c / r^alpha, Lipschitz constant L1, density ratio bounded by L2.
struct RegularityParams {
    double c = 1.0;
    double alpha = 2.0;
    double L1 = 1.0;
    double L2 = 2.0;

    void validate() const;
};

/// Constants the m-selection rule leaves unspecified. Always echoed in reports.
struct PlannerConstants {
    double C = 1.0;
    double K3 = 1.0;
};

struct PlannerReport {
    double n_star = 0.0;
    double term_partition = 0.0;
    double term_tail = 0.0;
    double m_required = 0.0; // 0 when not requested
    double eps = 0.0;
    double delta = 0.0;
    std::size_t m = 0;
    std::size_t d = 0;
    PlannerConstants constants_used;
};

/// Sample size above which the sup partition L1 error exceeds eps with
/// probability at most delta:
///   max{ 2*288^2 m^{d+1/d-1} / eps^4,  96 [log(1/delta) + m log 2 + log 4] / eps^2 }.
PlannerReport n_star(std::size_t m, std::size_t d, double eps, double delta);

/// m^{(d-1)/2} * log C(2n + m^{1/d}, m^{1/d}), the log of the growth function
/// bound for the recursive splitting family on 2n points.
double log_growth_bound(double n, double m, std::size_t d);

/// log C(N + k, k) for real N >= 0, k >= 0.
double log_binomial_upper(double N, double k);

struct GammaBounds {
    double g1; // 2 d m^{(d-1)/d}
    double g3; // 2 d R m^{(2d^2+2d-1)/(2d^2+2d)}
};

GammaBounds gamma_bounds(double m, std::size_t d, double R);

/// (2c / eps2)^{1/alpha}.
double tail_radius(const RegularityParams& params, double eps2);

/// 2 log(1/delta) / eps^2.
double n_for_gamma2(double eps, double delta);

/// C * K(eps / (5 K3), L2)^{(1+alpha)/alpha (2d^2+2d)} * eps^{-max{(2d^2+2d)/alpha, 2d}}.
double required_m(const RegularityParams& params, const PhiFamily& family, std::size_t d, double eps,
                  const PlannerConstants& constants = {});

/// Exponent max{(2d^2+2d)/alpha, 2d} applied to 1/eps in required_m.
double required_m_eps_exponent(std::size_t d, double alpha);

/// Integration-error variant: C * K1(eps1, L2)^{...} * eps^{-...} with eps1 the
/// largest value with K2(eps1) <= eps/10.
double required_m_integration(const RegularityParams& params, const PhiFamily& family, std::size_t d, double eps,
                              double C = 1.0);

/// K1(K2^{-1}(eps/9), L2), the constant that scales the sampling-error terms.
double k12(const PhiFamily& family, double eps, double L2);

struct PowerLawCheck {
    double radius;
    double empirical_tail; // fraction of points with Euclidean norm > radius
    double bound;          // c / r^alpha
    double slack;          // 3 binomial standard deviations at the bound
    bool pass;
};

std::vector<PowerLawCheck> check_power_law(const SampleMatrix& samples, const RegularityParams& params,
                                           std::span<const double> radii);

struct EdgeIntegral {
    double lhs; // integral over I of sum_j |y_j - x_j| dy
    double rhs; // (d/2) l(I) v(I)
};

/// Both sides in closed form. The inequality lhs <= rhs holds whenever x lies
/// in the closure of the rectangle; outside it lhs grows without bound.
/// Throws BadParams for an unbounded rectangle.
EdgeIntegral integral_edge_bound(const HyperRectangle& rect, std::span<const double> x);

/// exp(-2 (threshold - mu)^2 / n): tail bound on a sum of n [0,1] variables
/// with mean mu. Throws BadRange unless 0 <= mu <= n and threshold >= mu.
double chernoff_tail(double n, double mu, double threshold);

} // namespace phipart
