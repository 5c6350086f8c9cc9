#include "phipart/bounds.hpp"

#include "phipart/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phipart {

void RegularityParams::validate() const {
    if (!(c > 0.0) || !(alpha > 0.0) || !(L1 > 0.0) || !(L2 > 0.0)) {
        throw BadParams("regularity parameters c, alpha, L1, L2 must be positive");
    }
}

PlannerReport n_star(std::size_t m, std::size_t d, double eps, double delta) {
    if (m < 2) throw BadRange("n_star requires m >= 2");
    if (d < 1) throw BadRange("n_star requires d >= 1");
    if (!(eps > 0.0 && eps < 2.0)) throw BadRange("n_star requires eps in (0, 2)");
    if (!(delta > 0.0 && delta < 1.0)) throw BadRange("n_star requires delta in (0, 1)");

    const double md = static_cast<double>(m);
    const double dd = static_cast<double>(d);
    PlannerReport r;
    r.m = m;
    r.d = d;
    r.eps = eps;
    r.delta = delta;
    r.term_partition = 2.0 * 288.0 * 288.0 * std::pow(md, dd + 1.0 / dd - 1.0) / std::pow(eps, 4);
    r.term_tail = 96.0 * (std::log(1.0 / delta) + md * std::log(2.0) + std::log(4.0)) / (eps * eps);
    r.n_star = std::max(r.term_partition, r.term_tail);
    return r;
}

double log_binomial_upper(double N, double k) {
    if (N < 0.0 || k < 0.0) throw BadRange("log binomial arguments must be nonnegative");
    if (k == 0.0 || N == 0.0) return 0.0;
    // integral k: sum of log1p(N / i) keeps precision for huge N
    if (k == std::floor(k) && k <= 1e6) {
        double s = 0.0;
        for (double i = 1.0; i <= k; i += 1.0) s += std::log1p(N / i);
        return s;
    }
    return std::lgamma(N + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N + 1.0);
}

double log_growth_bound(double n, double m, std::size_t d) {
    if (!(n >= 1.0) || !(m >= 1.0) || d < 1) throw BadRange("log_growth_bound requires n, m, d >= 1");
    const double dd = static_cast<double>(d);
    double slabs = std::pow(m, 1.0 / dd);
    const double rounded = std::round(slabs);
    if (std::abs(slabs - rounded) < 1e-9 * rounded) slabs = rounded;
    return std::pow(m, (dd - 1.0) / 2.0) * log_binomial_upper(2.0 * n, slabs);
}

GammaBounds gamma_bounds(double m, std::size_t d, double R) {
    if (!(m >= 1.0) || d < 1) throw BadRange("gamma_bounds requires m >= 1, d >= 1");
    if (!(R > 0.0)) throw BadRange("gamma_bounds requires R > 0");
    const double dd = static_cast<double>(d);
    const double q = 2.0 * dd * dd + 2.0 * dd;
    return {2.0 * dd * std::pow(m, (dd - 1.0) / dd), 2.0 * dd * R * std::pow(m, (q - 1.0) / q)};
}

double tail_radius(const RegularityParams& params, double eps2) {
    if (!(eps2 > 0.0)) throw BadRange("tail_radius requires eps2 > 0");
    if (!(params.c > 0.0) || !(params.alpha > 0.0)) throw BadParams("c and alpha must be positive");
    return std::pow(2.0 * params.c / eps2, 1.0 / params.alpha);
}

double n_for_gamma2(double eps, double delta) {
    if (!(eps > 0.0)) throw BadRange("n_for_gamma2 requires eps > 0");
    if (!(delta > 0.0 && delta <= 1.0)) throw BadRange("n_for_gamma2 requires delta in (0, 1]");
    return 2.0 * std::log(1.0 / delta) / (eps * eps);
}

double required_m_eps_exponent(std::size_t d, double alpha) {
    const double dd = static_cast<double>(d);
    return std::max((2.0 * dd * dd + 2.0 * dd) / alpha, 2.0 * dd);
}

namespace {

double k_exponent(std::size_t d, double alpha) {
    const double dd = static_cast<double>(d);
    return (1.0 + alpha) / alpha * (2.0 * dd * dd + 2.0 * dd);
}

void check_m_inputs(const RegularityParams& params, std::size_t d, double eps) {
    params.validate();
    if (d < 1) throw BadRange("d must be at least 1");
    if (!(eps > 0.0)) throw BadRange("eps must be positive");
}

} // namespace

double required_m(const RegularityParams& params, const PhiFamily& family, std::size_t d, double eps,
                  const PlannerConstants& constants) {
    check_m_inputs(params, d, eps);
    if (!(constants.C > 0.0) || !(constants.K3 > 0.0)) throw BadParams("C and K3 must be positive");
    const auto tri = k_triple(family, eps / (5.0 * constants.K3), params.L2);
    return constants.C * std::pow(tri.k, k_exponent(d, params.alpha)) *
           std::pow(eps, -required_m_eps_exponent(d, params.alpha));
}

double required_m_integration(const RegularityParams& params, const PhiFamily& family, std::size_t d, double eps,
                              double C) {
    check_m_inputs(params, d, eps);
    if (!(C > 0.0)) throw BadParams("C must be positive");
    const double eps1 = inverse_k2(family, eps / 10.0);
    const auto tri = k_triple(family, eps1, params.L2);
    return C * std::pow(tri.k1, k_exponent(d, params.alpha)) * std::pow(eps, -required_m_eps_exponent(d, params.alpha));
}

double k12(const PhiFamily& family, double eps, double L2) {
    const double eps1 = inverse_k2(family, eps / 9.0);
    return k_triple(family, eps1, L2).k1;
}

std::vector<PowerLawCheck> check_power_law(const SampleMatrix& samples, const RegularityParams& params,
                                           std::span<const double> radii) {
    if (!(params.c > 0.0) || !(params.alpha > 0.0)) throw BadParams("c and alpha must be positive");
    const std::size_t n = samples.rows();
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (double v : samples.row(i)) s += v * v;
        norms[i] = std::sqrt(s);
    }
    std::vector<PowerLawCheck> out;
    out.reserve(radii.size());
    for (double r : radii) {
        if (!(r > 0.0)) throw BadRange("radii must be positive");
        const auto beyond = std::count_if(norms.begin(), norms.end(), [r](double v) { return v > r; });
        const double frac = n > 0 ? static_cast<double>(beyond) / static_cast<double>(n) : 0.0;
        const double bound = params.c / std::pow(r, params.alpha);
        const double p = std::min(bound, 1.0);
        const double slack = n > 0 ? 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
        out.push_back({r, frac, bound, slack, frac < bound + slack});
    }
    return out;
}

namespace {

// integral over (a, b] of |y - x| dy
double abs_moment(double a, double b, double x) {
    if (x <= a) return 0.5 * ((b - x) * (b - x) - (a - x) * (a - x));
    if (x >= b) return 0.5 * ((x - a) * (x - a) - (x - b) * (x - b));
    return 0.5 * ((x - a) * (x - a) + (b - x) * (b - x));
}

} // namespace

EdgeIntegral integral_edge_bound(const HyperRectangle& rect, std::span<const double> x) {
    if (!rect.is_bounded()) throw BadParams("integral_edge_bound needs a bounded rectangle");
    const std::size_t d = rect.dim();
    if (x.size() != d) throw DimensionMismatch("point dimension differs from rectangle");
    std::vector<double> widths(d);
    for (std::size_t j = 0; j < d; ++j) widths[j] = rect.side(j).length();

    double lhs = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const auto& s = rect.side(j);
        double term = abs_moment(s.lower().value(), s.upper().value(), x[j]);
        for (std::size_t k = 0; k < d; ++k) {
            if (k != j) term *= widths[k];
        }
        lhs += term;
    }
    return {lhs, 0.5 * static_cast<double>(d) * max_edge_length(rect) * volume(rect)};
}

double chernoff_tail(double n, double mu, double threshold) {
    if (!(n > 0.0)) throw BadRange("chernoff_tail requires n > 0");
    if (!(mu >= 0.0 && mu <= n)) throw BadRange("chernoff_tail requires 0 <= mu <= n");
    if (!(threshold >= mu)) throw BadRange("chernoff_tail requires threshold >= mu");
    const double gap = threshold - mu;
    return std::exp(-2.0 * gap * gap / n);
}

} // namespace phipart
