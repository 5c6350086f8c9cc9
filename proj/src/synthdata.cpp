#include "phipart/synthdata.hpp"

#include "phipart/error.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace phipart {

std::string_view to_string(DistKind kind) {
    switch (kind) {
    case DistKind::GaussianDiag: return "gaussian";
    case DistKind::Exponential: return "exponential";
    case DistKind::Uniform: return "uniform";
    case DistKind::Chi2: return "chi2";
    case DistKind::Cauchy: return "cauchy";
    }
    return "gaussian";
}

DistKind parse_dist_kind(std::string_view name) {
    if (name == "gaussian" || name == "gaussian_diag" || name == "normal") return DistKind::GaussianDiag;
    if (name == "exponential") return DistKind::Exponential;
    if (name == "uniform") return DistKind::Uniform;
    if (name == "chi2") return DistKind::Chi2;
    if (name == "cauchy") return DistKind::Cauchy;
    throw BadParams("unknown distribution kind '" + std::string(name) + "'");
}

DistributionSpec DistributionSpec::gaussian(std::vector<double> mean, std::vector<double> sd) {
    DistributionSpec s;
    s.kind = DistKind::GaussianDiag;
    s.loc = std::move(mean);
    s.scale = std::move(sd);
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::exponential(std::vector<double> scale, std::vector<double> loc) {
    DistributionSpec s;
    s.kind = DistKind::Exponential;
    if (loc.empty()) loc.assign(scale.size(), 0.0);
    s.loc = std::move(loc);
    s.scale = std::move(scale);
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::uniform(std::vector<double> lower, std::vector<double> upper) {
    DistributionSpec s;
    s.kind = DistKind::Uniform;
    s.lower = std::move(lower);
    s.upper = std::move(upper);
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::chi2(std::vector<double> dof) {
    DistributionSpec s;
    s.kind = DistKind::Chi2;
    s.dof = std::move(dof);
    s.validate();
    return s;
}

DistributionSpec DistributionSpec::cauchy(std::vector<double> loc, std::vector<double> scale) {
    DistributionSpec s;
    s.kind = DistKind::Cauchy;
    s.loc = std::move(loc);
    s.scale = std::move(scale);
    s.validate();
    return s;
}

std::size_t DistributionSpec::dim() const {
    switch (kind) {
    case DistKind::Uniform: return lower.size();
    case DistKind::Chi2: return dof.size();
    default: return scale.size();
    }
}

void DistributionSpec::validate() const {
    const std::size_t d = dim();
    if (d == 0) throw BadParams("distribution needs at least one axis");
    auto all_finite = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    switch (kind) {
    case DistKind::GaussianDiag:
    case DistKind::Exponential:
    case DistKind::Cauchy:
        if (loc.size() != d) throw BadParams("loc and scale must have the same length");
        if (!all_finite(loc) || !all_finite(scale)) throw BadParams("parameters must be finite");
        for (double s : scale) {
            if (!(s > 0.0)) throw BadParams("scales must be positive");
        }
        break;
    case DistKind::Uniform:
        if (upper.size() != d) throw BadParams("lower and upper must have the same length");
        if (!all_finite(lower) || !all_finite(upper)) throw BadParams("parameters must be finite");
        for (std::size_t j = 0; j < d; ++j) {
            if (!(lower[j] < upper[j])) throw BadParams("uniform bounds must satisfy lower < upper");
        }
        break;
    case DistKind::Chi2:
        for (double k : dof) {
            if (!(k > 0.0) || !std::isfinite(k)) throw BadParams("chi2 degrees of freedom must be positive");
        }
        break;
    }
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

double axis_log_pdf(const DistributionSpec& s, std::size_t j, double x) {
    switch (s.kind) {
    case DistKind::GaussianDiag: {
        const double z = (x - s.loc[j]) / s.scale[j];
        return -0.5 * z * z - std::log(s.scale[j]) - 0.5 * std::log(2.0 * std::numbers::pi);
    }
    case DistKind::Exponential:
        if (x < s.loc[j]) return kNegInf;
        return -(x - s.loc[j]) / s.scale[j] - std::log(s.scale[j]);
    case DistKind::Uniform:
        if (x < s.lower[j] || x > s.upper[j]) return kNegInf;
        return -std::log(s.upper[j] - s.lower[j]);
    case DistKind::Chi2: {
        if (x <= 0.0) return kNegInf;
        const double h = 0.5 * s.dof[j];
        return (h - 1.0) * std::log(x) - 0.5 * x - h * std::log(2.0) - std::lgamma(h);
    }
    case DistKind::Cauchy: {
        const double z = (x - s.loc[j]) / s.scale[j];
        return -std::log(std::numbers::pi * s.scale[j] * (1.0 + z * z));
    }
    }
    return kNegInf;
}

// support breakpoints where the density may jump
std::vector<double> axis_breakpoints(const DistributionSpec& s, std::size_t j) {
    switch (s.kind) {
    case DistKind::Exponential: return {s.loc[j]};
    case DistKind::Uniform: return {s.lower[j], s.upper[j]};
    case DistKind::Chi2: return {0.0};
    default: return {};
    }
}

std::pair<double, double> axis_extent(const DistributionSpec& s, std::size_t j) {
    switch (s.kind) {
    case DistKind::GaussianDiag: return {s.loc[j] - 10.0 * s.scale[j], s.loc[j] + 10.0 * s.scale[j]};
    case DistKind::Exponential: return {s.loc[j], s.loc[j] + 40.0 * s.scale[j]};
    case DistKind::Uniform: return {s.lower[j], s.upper[j]};
    case DistKind::Chi2: return {0.0, s.dof[j] + 40.0 * std::sqrt(2.0 * s.dof[j]) + 40.0};
    case DistKind::Cauchy: return {s.loc[j] - 1e4 * s.scale[j], s.loc[j] + 1e4 * s.scale[j]};
    }
    return {0.0, 1.0};
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

double log_density(const DistributionSpec& spec, std::span<const double> x) {
    if (x.size() != spec.dim()) throw DimensionMismatch("point dimension differs from distribution");
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        s += axis_log_pdf(spec, j, x[j]);
        if (s == kNegInf) return s;
    }
    return s;
}

double marginal_cdf(const DistributionSpec& s, std::size_t j, double x) {
    if (x == kNegInf) return 0.0;
    if (x == kInf) return 1.0;
    switch (s.kind) {
    case DistKind::GaussianDiag: return 0.5 * std::erfc(-(x - s.loc[j]) / (s.scale[j] * std::numbers::sqrt2));
    case DistKind::Exponential: return x <= s.loc[j] ? 0.0 : -std::expm1(-(x - s.loc[j]) / s.scale[j]);
    case DistKind::Uniform:
        return std::clamp((x - s.lower[j]) / (s.upper[j] - s.lower[j]), 0.0, 1.0);
    case DistKind::Chi2: return x <= 0.0 ? 0.0 : boost::math::gamma_p(0.5 * s.dof[j], 0.5 * x);
    case DistKind::Cauchy: return std::atan2(1.0, -(x - s.loc[j]) / s.scale[j]) / std::numbers::pi;
    }
    return 0.0;
}

double marginal_sf(const DistributionSpec& s, std::size_t j, double x) {
    if (x == kNegInf) return 1.0;
    if (x == kInf) return 0.0;
    switch (s.kind) {
    case DistKind::GaussianDiag: return 0.5 * std::erfc((x - s.loc[j]) / (s.scale[j] * std::numbers::sqrt2));
    case DistKind::Exponential: return x <= s.loc[j] ? 1.0 : std::exp(-(x - s.loc[j]) / s.scale[j]);
    case DistKind::Uniform:
        return std::clamp((s.upper[j] - x) / (s.upper[j] - s.lower[j]), 0.0, 1.0);
    case DistKind::Chi2: return x <= 0.0 ? 1.0 : boost::math::gamma_q(0.5 * s.dof[j], 0.5 * x);
    case DistKind::Cauchy: return std::atan2(1.0, (x - s.loc[j]) / s.scale[j]) / std::numbers::pi;
    }
    return 0.0;
}

SampleMatrix draw(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n == 0) throw BadParams("draw requires n >= 1");
    const std::size_t d = spec.dim();
    const std::uint64_t mixed = splitmix64(seed);
    std::seed_seq seq{static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32),
                      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 rng(seq);

    std::vector<double> values(n * d);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::chi_squared_distribution<double>> chi;
    if (spec.kind == DistKind::Chi2) {
        for (double k : spec.dof) chi.emplace_back(k);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double v = 0.0;
            switch (spec.kind) {
            case DistKind::GaussianDiag: v = spec.loc[j] + spec.scale[j] * normal(rng); break;
            case DistKind::Exponential: v = spec.loc[j] - spec.scale[j] * std::log1p(-unit(rng)); break;
            case DistKind::Uniform: v = spec.lower[j] + (spec.upper[j] - spec.lower[j]) * unit(rng); break;
            case DistKind::Chi2: v = chi[j](rng); break;
            case DistKind::Cauchy:
                v = spec.loc[j] + spec.scale[j] * std::tan(std::numbers::pi * (unit(rng) - 0.5));
                break;
            }
            values[i * d + j] = v;
        }
    }
    return SampleMatrix(d, std::move(values));
}

double cell_mass(const DistributionSpec& spec, const HyperRectangle& rect) {
    if (rect.dim() != spec.dim()) throw DimensionMismatch("rectangle dimension differs from distribution");
    double mass = 1.0;
    for (std::size_t j = 0; j < rect.dim(); ++j) {
        const double a = rect.side(j).lower().as_double();
        const double b = rect.side(j).upper().as_double();
        double axis;
        if (a == kNegInf) {
            axis = marginal_cdf(spec, j, b);
        } else if (b == kInf) {
            axis = marginal_sf(spec, j, a);
        } else if (marginal_cdf(spec, j, a) > 0.5) {
            axis = marginal_sf(spec, j, a) - marginal_sf(spec, j, b);
        } else {
            axis = marginal_cdf(spec, j, b) - marginal_cdf(spec, j, a);
        }
        mass *= std::max(axis, 0.0);
    }
    return mass;
}

std::optional<double> closed_form_divergence(const DistributionSpec& p, const DistributionSpec& q,
                                             const PhiFamily& family) {
    if (p.dim() != q.dim()) throw DimensionMismatch("P and Q differ in dimension");
    if (p == q) return 0.0;
    if (p.kind != q.kind) return std::nullopt;
    const std::size_t d = p.dim();

    if (p.kind == DistKind::GaussianDiag) {
        switch (family.kind()) {
        case PhiKind::KL: {
            double kl = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double s1 = p.scale[j], s2 = q.scale[j], dm = p.loc[j] - q.loc[j];
                kl += std::log(s2 / s1) + (s1 * s1 + dm * dm) / (2.0 * s2 * s2) - 0.5;
            }
            return kl;
        }
        case PhiKind::Hellinger: {
            double log_bc = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double s1 = p.scale[j], s2 = q.scale[j], dm = p.loc[j] - q.loc[j];
                const double v = s1 * s1 + s2 * s2;
                log_bc += 0.5 * std::log(2.0 * s1 * s2 / v) - dm * dm / (4.0 * v);
            }
            return 2.0 - 2.0 * std::exp(log_bc);
        }
        case PhiKind::ChiSquared: {
            double log_m2 = 0.0; // log of integral p^2 / q
            for (std::size_t j = 0; j < d; ++j) {
                const double s1 = p.scale[j], s2 = q.scale[j], dm = p.loc[j] - q.loc[j];
                const double w = 2.0 * s2 * s2 - s1 * s1;
                if (!(w > 0.0)) return std::nullopt; // divergence is infinite
                log_m2 += std::log(s2 * s2 / (s1 * std::sqrt(w))) + dm * dm / w;
            }
            return std::expm1(log_m2);
        }
        case PhiKind::TotalVariation: {
            double dist2 = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                if (p.scale[j] != q.scale[j]) return std::nullopt;
                const double z = (p.loc[j] - q.loc[j]) / p.scale[j];
                dist2 += z * z;
            }
            return std::erf(std::sqrt(dist2) / (2.0 * std::numbers::sqrt2));
        }
        case PhiKind::Custom: return std::nullopt;
        }
    }

    if (p.kind == DistKind::Uniform) {
        double ratio_vol = 1.0; // vol(P box) / vol(Q box)
        for (std::size_t j = 0; j < d; ++j) {
            if (p.lower[j] < q.lower[j] || p.upper[j] > q.upper[j]) return std::nullopt;
            ratio_vol *= (p.upper[j] - p.lower[j]) / (q.upper[j] - q.lower[j]);
        }
        return family(1.0 / ratio_vol) * ratio_vol + family(0.0) * (1.0 - ratio_vol);
    }

    if (p.kind == DistKind::Exponential && p.loc == q.loc) {
        if (family.kind() == PhiKind::KL) {
            double kl = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double s1 = p.scale[j], s2 = q.scale[j];
                kl += std::log(s2 / s1) + s1 / s2 - 1.0;
            }
            return kl;
        }
        if (family.kind() == PhiKind::Hellinger) {
            double log_bc = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double r1 = 1.0 / p.scale[j], r2 = 1.0 / q.scale[j];
                log_bc += std::log(2.0 * std::sqrt(r1 * r2) / (r1 + r2));
            }
            return 2.0 - 2.0 * std::exp(log_bc);
        }
    }
    return std::nullopt;
}

namespace {

struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

AxisRule axis_rule(double lo, double hi, std::vector<double> breaks, std::size_t grid) {
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return !(b > lo && b < hi); }),
                 breaks.end());
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    AxisRule rule;
    const double total = hi - lo;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double a = breaks[k], b = breaks[k + 1];
        const auto count = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(static_cast<double>(grid) * (b - a) / total)));
        const double h = (b - a) / static_cast<double>(count);
        for (std::size_t i = 0; i < count; ++i) {
            rule.nodes.push_back(a + (static_cast<double>(i) + 0.5) * h);
            rule.weights.push_back(h);
        }
    }
    return rule;
}

} // namespace

QuadratureResult quadrature_divergence(const DistributionSpec& p, const DistributionSpec& q,
                                       const PhiFamily& family, const HyperRectangle& box, std::size_t grid) {
    p.validate();
    q.validate();
    const std::size_t d = p.dim();
    if (q.dim() != d || box.dim() != d) throw DimensionMismatch("P, Q and box must share a dimension");
    if (d > 3) throw BadParams("quadrature supports d <= 3");
    if (grid < 64) throw BadParams("quadrature grid must be at least 64 per axis");
    if (!box.is_bounded()) throw BadParams("quadrature box must be bounded");

    std::vector<AxisRule> rules;
    for (std::size_t j = 0; j < d; ++j) {
        auto breaks = axis_breakpoints(p, j);
        const auto more = axis_breakpoints(q, j);
        breaks.insert(breaks.end(), more.begin(), more.end());
        rules.push_back(axis_rule(box.side(j).lower().value(), box.side(j).upper().value(), breaks, grid));
    }

    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    double value = 0.0;
    std::size_t nodes = 0;
    while (true) {
        double w = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = rules[j].nodes[idx[j]];
            w *= rules[j].weights[idx[j]];
        }
        ++nodes;
        const double lq = log_density(q, x);
        const double lp = log_density(p, x);
        if (lq == kNegInf) {
            if (lp != kNegInf) throw ZeroDensity("q vanishes where p is positive; the divergence is infinite");
        } else {
            const double ratio = lp == kNegInf ? 0.0 : std::exp(lp - lq);
            value += w * family(ratio) * std::exp(lq);
        }
        std::size_t j = d;
        while (j > 0) {
            --j;
            if (++idx[j] < rules[j].nodes.size()) break;
            idx[j] = 0;
            if (j == 0) {
                return {value, std::max(0.0, 1.0 - cell_mass(p, box)), std::max(0.0, 1.0 - cell_mass(q, box)),
                        nodes};
            }
        }
    }
}

HyperRectangle default_quadrature_box(const DistributionSpec& p, const DistributionSpec& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("P and Q differ in dimension");
    std::vector<double> lo(p.dim()), hi(p.dim());
    for (std::size_t j = 0; j < p.dim(); ++j) {
        const auto [a1, b1] = axis_extent(p, j);
        const auto [a2, b2] = axis_extent(q, j);
        lo[j] = std::min(a1, a2);
        hi[j] = std::max(b1, b2);
    }
    return HyperRectangle::box(lo, hi);
}

std::size_t default_quadrature_grid(std::size_t d) {
    switch (d) {
    case 1: return 4096;
    case 2: return 1024;
    default: return 128;
    }
}

double oracle_divergence(const DistributionSpec& p, const DistributionSpec& q, const PhiFamily& family) {
    if (auto v = closed_form_divergence(p, q, family)) return *v;
    if (p.dim() > 3) throw OracleFailure("no closed form and quadrature needs d <= 3");
    try {
        return quadrature_divergence(p, q, family, default_quadrature_box(p, q), default_quadrature_grid(p.dim()))
            .value;
    } catch (const ZeroDensity& e) {
        throw OracleFailure(e.what());
    }
}

std::vector<double> partition_masses(const DistributionSpec& spec, const Partition& partition) {
    std::vector<double> out;
    out.reserve(partition.size());
    for (const auto& cell : partition.cells()) out.push_back(cell_mass(spec, cell));
    return out;
}

} // namespace phipart
