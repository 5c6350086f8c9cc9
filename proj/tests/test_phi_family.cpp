#include "phipart/error.hpp"
#include "phipart/phi_family.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace phipart;

namespace {
const PhiKind kAll[] = {PhiKind::KL, PhiKind::Hellinger, PhiKind::TotalVariation, PhiKind::ChiSquared};
}

TEST_CASE("phi values") {
    const auto kl = PhiFamily::kl();
    CHECK(kl(1.0) == 0.0);
    CHECK(kl(0.0) == 0.0);
    CHECK(kl(std::exp(1.0)) == doctest::Approx(std::exp(1.0)));
    CHECK(PhiFamily::hellinger()(4.0) == doctest::Approx(1.0));
    CHECK(PhiFamily::hellinger()(0.0) == 1.0);
    CHECK(PhiFamily::total_variation()(0.0) == 0.5);
    CHECK(PhiFamily::total_variation()(3.0) == 1.0);
    CHECK(PhiFamily::chi_squared()(0.0) == 1.0);
    CHECK(PhiFamily::chi_squared()(3.0) == 4.0);
    for (auto k : kAll) {
        const auto f = PhiFamily::builtin(k);
        CHECK(f.phi_of_one() == 0.0);
        CHECK(f.convex());
        CHECK_THROWS_AS(f(-1e-300), NegativeRatio);
        CHECK(phi_eval(f, 2.0) == f(2.0));
    }
}

TEST_CASE("names") {
    CHECK(parse_phi_kind("kl") == PhiKind::KL);
    CHECK(parse_phi_kind("hellinger") == PhiKind::Hellinger);
    CHECK(parse_phi_kind("tv") == PhiKind::TotalVariation);
    CHECK(parse_phi_kind("chi2") == PhiKind::ChiSquared);
    CHECK_THROWS_AS(parse_phi_kind("renyi"), BadParams);
    for (auto k : kAll) CHECK(PhiFamily::from_name(std::string(to_string(k))).kind() == k);
}

TEST_CASE("convexity on random triples") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 10.0), lam(0.0, 1.0);
    for (auto k : kAll) {
        const auto f = PhiFamily::builtin(k);
        for (int t = 0; t < 2000; ++t) {
            const double a = u(rng), b = u(rng), l = lam(rng);
            CHECK(f(l * a + (1 - l) * b) <= l * f(a) + (1 - l) * f(b) + 1e-12);
        }
    }
}

TEST_CASE("derivatives") {
    CHECK(PhiFamily::kl().derivative(1.0) == doctest::Approx(1.0));
    CHECK(PhiFamily::hellinger().derivative(4.0) == doctest::Approx(0.5));
    CHECK(PhiFamily::chi_squared().derivative(3.0) == doctest::Approx(4.0));
    CHECK(std::abs(PhiFamily::total_variation().derivative(2.0)) == doctest::Approx(0.5));
}

TEST_CASE("k_triple worked values") {
    const auto kl = k_triple(PhiFamily::kl(), 0.01, 2.0);
    CHECK(kl.k0 == doctest::Approx(2.0 * std::log(2.0)));
    CHECK(kl.k1 == doctest::Approx(-std::log(0.01) + 1.0));
    CHECK(kl.k2 == doctest::Approx(2.0 * 0.01 * -std::log(0.01)));
    CHECK(kl.k == doctest::Approx(kl.k1));

    for (double L : {0.3, 0.7, 1.0}) CHECK(k_triple(PhiFamily::total_variation(), 0.1, L).k1 == 0.5);
    CHECK(k_triple(PhiFamily::chi_squared(), 0.1, 3.0).k2 == doctest::Approx(0.2));

    CHECK_THROWS_AS(k_triple(PhiFamily::kl(), 0.5, 0.5), BadRange);
    CHECK_THROWS_AS(k_triple(PhiFamily::kl(), 0.0, 1.0), BadRange);
}

TEST_CASE("KL K0 covers the maximum of |t log t| near 1/e") {
    const auto kl = PhiFamily::kl();
    // sup over [0, L] of |t log t| is 1/e once L passes 1/e
    CHECK(kl.k0(0.5) >= std::exp(-1.0));
    CHECK(kl.k0(1.0) >= std::exp(-1.0));
    CHECK(kl.k0(0.2) == doctest::Approx(0.2 * -std::log(0.2)));
    CHECK(kl.k0(5.0) == doctest::Approx(5.0 * std::log(5.0)));
}

TEST_CASE("regularization inequalities hold on grids") {
    for (auto k : kAll) {
        const auto f = PhiFamily::builtin(k);
        for (double eps : {1e-3, 1e-2, 0.1, 0.3}) {
            for (double L : {0.5, 1.0, 2.0, 5.0}) {
                const auto v = check_regularization(f, eps, L, 2000);
                CHECK_MESSAGE(!v.has_value(), f.name(), " eps=", eps, " L=", L, " condition ",
                              v ? v->condition : ' ');
            }
        }
    }
}

TEST_CASE("inverse_k2") {
    CHECK(inverse_k2(PhiFamily::total_variation(), 0.05) == doctest::Approx(0.1).epsilon(1e-11));
    CHECK(inverse_k2(PhiFamily::chi_squared(), 0.2) == doctest::Approx(0.1).epsilon(1e-11));
    CHECK(inverse_k2(PhiFamily::kl(), 2.0 * 0.01 * -std::log(0.01)) == doctest::Approx(0.01).epsilon(1e-10));
    CHECK(inverse_k2(PhiFamily::kl(), 0.0921) == doctest::Approx(0.01).epsilon(1e-3));
    // KL K2 is only used up to 1/e
    CHECK(inverse_k2(PhiFamily::kl(), 10.0) <= std::exp(-1.0));
    CHECK_THROWS_AS(inverse_k2(PhiFamily::kl(), 0.0), BadRange);
}

TEST_CASE("inverse_k2 is a right inverse") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> lt(-8.0, -1.0);
    for (auto k : kAll) {
        const auto f = PhiFamily::builtin(k);
        for (int i = 0; i < 200; ++i) {
            const double t = std::pow(10.0, lt(rng));
            const double e = inverse_k2(f, t);
            CHECK(f.k2(e) <= t * (1 + 1e-12));
            if (e < f.k2_domain_max()) CHECK(f.k2(e * (1 + 1e-9)) > t);
        }
    }
}

TEST_CASE("custom families are spot checked") {
    PhiFamily::Definition good;
    good.name = "half_chi2";
    good.phi = [](double t) { return 0.5 * (t - 1) * (t - 1); };
    good.phi_at_zero = 0.5;
    good.k0 = [](double L) { return 0.5 * std::max(1.0, (L - 1) * (L - 1)); };
    good.k1 = [](double, double L) { return std::max(1.0, L - 1); };
    good.k2 = [](double eps) { return eps; };
    const auto f = PhiFamily::custom(good);
    CHECK(f.kind() == PhiKind::Custom);
    CHECK(f(3.0) == 2.0);
    CHECK(f.derivative(3.0) == doctest::Approx(2.0).epsilon(1e-6));

    auto bad = good;
    bad.k0 = [](double) { return 0.1; };
    CHECK_THROWS_AS(PhiFamily::custom(bad), BadParams);
    auto bad_k2 = good;
    bad_k2.k2 = [](double eps) { return 0.1 * eps; };
    CHECK_THROWS_AS(PhiFamily::custom(bad_k2), BadParams);
}
