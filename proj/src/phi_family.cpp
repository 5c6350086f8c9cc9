#include "phipart/phi_family.hpp"

#include "phipart/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phipart {

std::string_view to_string(PhiKind kind) {
    switch (kind) {
    case PhiKind::KL: return "kl";
    case PhiKind::Hellinger: return "hellinger";
    case PhiKind::TotalVariation: return "tv";
    case PhiKind::ChiSquared: return "chi2";
    case PhiKind::Custom: return "custom";
    }
    return "custom";
}

PhiKind parse_phi_kind(std::string_view name) {
    if (name == "kl") return PhiKind::KL;
    if (name == "hellinger") return PhiKind::Hellinger;
    if (name == "tv") return PhiKind::TotalVariation;
    if (name == "chi2") return PhiKind::ChiSquared;
    throw BadParams("unknown phi family '" + std::string(name) + "' (expected kl|hellinger|tv|chi2)");
}

namespace {

constexpr double kInvE = 0.36787944117144233; // 1/e, argmin of t log t

} // namespace

PhiFamily PhiFamily::kl() {
    Definition def;
    def.name = "kl";
    def.phi = [](double t) { return t * std::log(t); };
    def.phi_at_zero = 0.0;
    def.derivative = [](double t) { return std::log(t) + 1.0; };
    // |L log L| undershoots max_{[0,L]} |t log t| = 1/e once L > 1/e and
    // L log L < 1/e, so the interior minimum is folded in.
    def.k0 = [](double L) { return L <= kInvE ? std::abs(L * std::log(L)) : std::max(kInvE, L * std::log(L)); };
    def.k1 = [](double eps, double L) { return std::max(std::abs(std::log(eps)), std::abs(std::log(L))) + 1.0; };
    def.k2 = [](double eps) { return 2.0 * std::abs(eps * std::log(eps)); };
    // t log t is monotone on [0, eps] only below 1/e
    def.k2_domain_max = kInvE;
    return PhiFamily(PhiKind::KL, std::move(def));
}

PhiFamily PhiFamily::hellinger() {
    Definition def;
    def.name = "hellinger";
    def.phi = [](double t) {
        const double r = std::sqrt(t) - 1.0;
        return r * r;
    };
    def.phi_at_zero = 1.0;
    def.derivative = [](double t) { return 1.0 - 1.0 / std::sqrt(t); };
    def.k0 = [](double L) {
        const double r = std::sqrt(L) - 1.0;
        return std::max(1.0, r * r);
    };
    def.k1 = [](double eps, double L) {
        return std::max(std::abs(1.0 - 1.0 / std::sqrt(eps)), std::abs(1.0 - 1.0 / std::sqrt(L)));
    };
    def.k2 = [](double eps) { return 2.0 * std::sqrt(eps); };
    return PhiFamily(PhiKind::Hellinger, std::move(def));
}

PhiFamily PhiFamily::total_variation() {
    Definition def;
    def.name = "tv";
    def.phi = [](double t) { return 0.5 * std::abs(t - 1.0); };
    def.phi_at_zero = 0.5;
    def.derivative = [](double t) { return t < 1.0 ? -0.5 : (t > 1.0 ? 0.5 : 0.0); };
    def.k0 = [](double L) { return std::max(0.5, 0.5 * std::abs(L - 1.0)); };
    def.k1 = [](double, double) { return 0.5; };
    def.k2 = [](double eps) { return 0.5 * eps; };
    return PhiFamily(PhiKind::TotalVariation, std::move(def));
}

PhiFamily PhiFamily::chi_squared() {
    Definition def;
    def.name = "chi2";
    def.phi = [](double t) { return (t - 1.0) * (t - 1.0); };
    def.phi_at_zero = 1.0;
    def.derivative = [](double t) { return 2.0 * (t - 1.0); };
    def.k0 = [](double L) { return std::max(1.0, (L - 1.0) * (L - 1.0)); };
    def.k1 = [](double, double L) { return std::max(2.0, 2.0 * std::abs(L - 1.0)); };
    def.k2 = [](double eps) { return 2.0 * eps; };
    return PhiFamily(PhiKind::ChiSquared, std::move(def));
}

PhiFamily PhiFamily::builtin(PhiKind kind) {
    switch (kind) {
    case PhiKind::KL: return kl();
    case PhiKind::Hellinger: return hellinger();
    case PhiKind::TotalVariation: return total_variation();
    case PhiKind::ChiSquared: return chi_squared();
    case PhiKind::Custom: break;
    }
    throw BadParams("custom families have no built-in definition");
}

PhiFamily PhiFamily::from_name(std::string_view name) { return builtin(parse_phi_kind(name)); }

PhiFamily PhiFamily::custom(Definition def) {
    if (!def.phi || !def.k0 || !def.k1 || !def.k2) {
        throw BadParams("custom family needs phi, k0, k1 and k2");
    }
    if (def.name.empty()) def.name = "custom";
    PhiFamily family(PhiKind::Custom, std::move(def));
    for (double eps : {1e-3, 1e-2, 0.1}) {
        for (double L : {0.5, 1.0, 2.0, 5.0}) {
            if (auto v = check_regularization(family, eps, L, 2000)) {
                throw BadParams("custom family '" + family.name() + "' violates regularization condition (" +
                                std::string(1, v->condition) + ") at eps=" + std::to_string(eps) +
                                ", L=" + std::to_string(L));
            }
        }
    }
    return family;
}

double PhiFamily::operator()(double t) const {
    if (t < 0.0 || std::isnan(t)) throw NegativeRatio("phi evaluated at negative ratio " + std::to_string(t));
    if (t == 0.0) return def_.phi_at_zero;
    return def_.phi(t);
}

double PhiFamily::derivative(double t) const {
    if (def_.derivative) return def_.derivative(t);
    const double h = 1e-6 * std::max(1.0, t);
    const double lo = std::max(t - h, 0.0);
    return ((*this)(t + h) - (*this)(lo)) / (t + h - lo);
}

KTriple k_triple(const PhiFamily& family, double eps, double L) {
    if (!(eps > 0.0) || !(eps < L) || !std::isfinite(L)) {
        throw BadRange("k_triple requires 0 < eps < L, got eps=" + std::to_string(eps) + ", L=" + std::to_string(L));
    }
    KTriple t{family.k0(L), family.k1(eps, L), family.k2(eps), 0.0};
    t.k = std::max({t.k0, t.k1, t.k2});
    return t;
}

double inverse_k2(const PhiFamily& family, double target) {
    if (!(target > 0.0) || !std::isfinite(target)) throw BadRange("inverse_k2 target must be positive");
    const double cap = family.k2_domain_max();

    double lo = std::min(1.0, cap);
    double hi = lo;
    if (family.k2(lo) <= target) {
        // grow until infeasible or the valid domain ends
        while (true) {
            if (lo >= cap) return cap;
            const double next = std::min(lo * 2.0, cap);
            if (next > 1e300) return lo;
            if (family.k2(next) > target) {
                hi = next;
                break;
            }
            lo = next;
        }
    } else {
        while (family.k2(lo) > target) {
            hi = lo;
            lo *= 0.5;
            if (lo < std::numeric_limits<double>::min()) {
                throw NoSolution("K2(eps) exceeds " + std::to_string(target) + " for every representable eps");
            }
        }
    }
    while ((hi - lo) > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        (family.k2(mid) <= target ? lo : hi) = mid;
    }
    return lo;
}

std::optional<RegularityViolation> check_regularization(const PhiFamily& family, double eps, double L,
                                                        std::size_t points) {
    if (points < 2) points = 2;
    const auto tri = k_triple(family, eps, L);
    auto exceeds = [](double lhs, double bound) { return lhs > bound * (1.0 + 1e-12) + 1e-14; };
    auto grid = [points](double a, double b, std::size_t i) {
        return a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
    };

    for (std::size_t i = 0; i < points; ++i) {
        const double s = grid(0.0, L, i);
        const double v = std::abs(family(s));
        if (exceeds(v, tri.k0)) return RegularityViolation{'a', eps, L, s, s, v, tri.k0};
    }
    for (std::size_t i = 0; i < points; ++i) {
        const double s = grid(eps, L, i);
        const double v = std::abs(family.derivative(s));
        if (exceeds(v, tri.k1)) return RegularityViolation{'b', eps, L, s, s, v, tri.k1};
    }
    double lo_v = family(0.0), hi_v = lo_v, lo_s = 0.0, hi_s = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double s = grid(0.0, eps, i);
        const double v = family(s);
        if (v < lo_v) lo_v = v, lo_s = s;
        if (v > hi_v) hi_v = v, hi_s = s;
    }
    if (exceeds(hi_v - lo_v, tri.k2)) return RegularityViolation{'c', eps, L, lo_s, hi_s, hi_v - lo_v, tri.k2};

    const std::size_t pair_points = std::max<std::size_t>(2, static_cast<std::size_t>(std::sqrt(points)));
    for (std::size_t i = 0; i < pair_points; ++i) {
        const double s1 = eps * static_cast<double>(i) / static_cast<double>(pair_points - 1);
        for (std::size_t j = 0; j < pair_points; ++j) {
            const double s2 = eps + (L - eps) * static_cast<double>(j) / static_cast<double>(pair_points - 1);
            const double lhs = std::abs(family(s2) - family(s1));
            const double bound = tri.k1 * std::abs(s2 - s1) + 2.0 * tri.k2;
            if (exceeds(lhs, bound)) return RegularityViolation{'r', eps, L, s1, s2, lhs, bound};
        }
    }
    return std::nullopt;
}

} // namespace phipart
