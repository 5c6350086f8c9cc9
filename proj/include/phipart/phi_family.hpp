#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace phipart {

enum class PhiKind { KL, Hellinger, TotalVariation, ChiSquared, Custom };

std::string_view to_string(PhiKind kind);
/// Accepts the CLI spellings kl, hellinger, tv, chi2.
PhiKind parse_phi_kind(std::string_view name);

struct KTriple {
    double k0;
    double k1;
    double k2;
    double k; // max(k0, k1, k2)
};

/// A divergence generator phi together with its epsilon-regularization
/// triple {K0(L), K1(eps, L), K2(eps)}:
///   max_{[0,L]} |phi| <= K0(L),  max_{[eps,L]} |phi'| <= K1(eps, L),
///   |phi(s2) - phi(s1)| <= K2(eps) for s1, s2 in [0, eps].
class PhiFamily {
public:
    using Scalar = std::function<double(double)>;
    using Binary = std::function<double(double, double)>;

    struct Definition {
        std::string name;
        Scalar phi;       // on (0, inf)
        double phi_at_zero; // continuous extension at 0
        Scalar derivative;  // optional; central differences when empty
        Scalar k0;
        Binary k1;
        Scalar k2;
        bool convex = true;
        /// Upper end of the range where K2 is a valid bound and increasing.
        double k2_domain_max = std::numeric_limits<double>::infinity();
    };

    static PhiFamily kl();
    static PhiFamily hellinger();
    static PhiFamily total_variation();
    static PhiFamily chi_squared();
    static PhiFamily builtin(PhiKind kind);
    static PhiFamily from_name(std::string_view name);

    /// Registers a user family. The regularization inequalities are spot
    /// checked on grids; violations throw BadParams.
    static PhiFamily custom(Definition def);

    PhiKind kind() const { return kind_; }
    const std::string& name() const { return def_.name; }
    bool convex() const { return def_.convex; }
    double phi_at_zero() const { return def_.phi_at_zero; }
    double phi_of_one() const { return (*this)(1.0); }
    double k2_domain_max() const { return def_.k2_domain_max; }

    /// phi(t) for t >= 0; throws NegativeRatio for t < 0.
    double operator()(double t) const;
    double derivative(double t) const;

    double k0(double L) const { return def_.k0(L); }
    double k1(double eps, double L) const { return def_.k1(eps, L); }
    double k2(double eps) const { return def_.k2(eps); }

private:
    PhiFamily(PhiKind kind, Definition def) : kind_(kind), def_(std::move(def)) {}
    PhiKind kind_;
    Definition def_;
};

inline double phi_eval(const PhiFamily& family, double t) { return family(t); }

/// K0(L), K1(eps, L), K2(eps) and their max. Throws BadRange unless 0 < eps < L.
KTriple k_triple(const PhiFamily& family, double eps, double L);

/// Largest eps1 with K2(eps1) <= target, by bisection to relative tolerance
/// 1e-12. Search is restricted to (0, k2_domain_max]. Throws NoSolution.
double inverse_k2(const PhiFamily& family, double target);

struct RegularityViolation {
    char condition; // 'a', 'b', 'c' or 'r' (the combined two-sided inequality)
    double eps;
    double L;
    double s1;
    double s2;
    double lhs;
    double bound;
};

/// Grid spot check of the three regularization inequalities at (eps, L),
/// with `points` grid points per range. Returns the first violation found.
std::optional<RegularityViolation> check_regularization(const PhiFamily& family, double eps, double L,
                                                        std::size_t points = 10000);

} // namespace phipart
