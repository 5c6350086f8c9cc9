#include "phipart/bounds.hpp"
#include "phipart/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace phipart;

TEST_CASE("n_star worked example") {
    const auto r = n_star(4, 1, 0.1, 0.05);
    CHECK(r.term_partition == doctest::Approx(6.63552e9).epsilon(1e-12));
    CHECK(r.term_tail == doctest::Approx(68684.307426).epsilon(1e-9));
    CHECK(r.n_star == r.term_partition);
    CHECK(r.m == 4);
    CHECK(r.d == 1);
}

TEST_CASE("n_star homogeneity and monotonicity") {
    const auto a = n_star(16, 2, 0.1, 0.05);
    const auto b = n_star(16, 2, 0.2, 0.05);
    CHECK(a.term_partition / b.term_partition == doctest::Approx(16.0));
    CHECK(a.term_tail / b.term_tail == doctest::Approx(4.0));
    double prev = INFINITY;
    for (double eps : {0.05, 0.1, 0.2, 0.5, 1.0, 1.9}) {
        const double v = n_star(8, 1, eps, 0.1).n_star;
        CHECK(std::isfinite(v));
        CHECK(v > 0);
        CHECK(v <= prev);
        prev = v;
    }
    prev = INFINITY;
    for (double delta : {1e-6, 1e-3, 0.1, 0.5, 0.99}) {
        const double v = n_star(1024, 1, 1.5, delta).n_star;
        CHECK(v <= prev);
        prev = v;
    }
    CHECK_THROWS_AS(n_star(1, 1, 0.1, 0.1), BadRange);
    CHECK_THROWS_AS(n_star(4, 1, 0.0, 0.1), BadRange);
    CHECK_THROWS_AS(n_star(4, 1, 2.0, 0.1), BadRange);
    CHECK_THROWS_AS(n_star(4, 1, 0.1, 1.0), BadRange);
}

TEST_CASE("growth bound") {
    CHECK(log_growth_bound(3, 2, 1) == doctest::Approx(std::log(28.0)).epsilon(1e-12));
    CHECK(log_binomial_upper(6, 2) == doctest::Approx(std::log(28.0)));
    CHECK(log_binomial_upper(5, 0) == 0.0);
    for (double n : {1.0, 4.0, 100.0}) CHECK(log_growth_bound(n, 1, 1) >= std::log(2 * n + 1) - 1e-12);
    // non-integer k through lgamma
    CHECK(log_binomial_upper(10, 2.5) > log_binomial_upper(10, 2));
    CHECK(log_binomial_upper(10, 2.5) < log_binomial_upper(10, 3));
    CHECK(log_growth_bound(10, 16, 2) == doctest::Approx(4.0 * log_binomial_upper(20, 4)));
}

TEST_CASE("gamma bounds") {
    CHECK(gamma_bounds(9, 1, 1.0).g1 == doctest::Approx(2.0));
    CHECK(gamma_bounds(16, 2, 1.0).g3 == doctest::Approx(50.79683366).epsilon(1e-9));
    CHECK(gamma_bounds(16, 2, 1.0).g1 == doctest::Approx(16.0));
    CHECK(gamma_bounds(16, 2, 3.0).g3 == doctest::Approx(3 * 50.79683366).epsilon(1e-9));
}

TEST_CASE("tail radius and Γ2 sample size") {
    CHECK(tail_radius({1.0, 2.0, 1.0, 2.0}, 0.5) == doctest::Approx(2.0));
    CHECK(tail_radius({0.5, 1.0, 1.0, 2.0}, 0.1) == doctest::Approx(10.0));
    double prev = 0.0;
    for (double e : {1.0, 0.5, 0.1, 0.01}) {
        const double r = tail_radius({}, e);
        CHECK(r > prev);
        prev = r;
    }
    CHECK(n_for_gamma2(0.1, std::exp(-1.0)) == doctest::Approx(200.0));
    CHECK(n_for_gamma2(0.1, 1.0) == 0.0);
    CHECK_THROWS_AS(n_for_gamma2(0.1, 0.0), BadRange);
    RegularityParams bad;
    bad.alpha = 0;
    CHECK_THROWS_AS(tail_radius(bad, 0.5), BadParams);
}

TEST_CASE("required_m") {
    RegularityParams params{1.0, 2.0, 1.0, 2.0};
    const auto tv = PhiFamily::total_variation();
    const double K = k_triple(tv, 0.02, 2.0).k;
    CHECK(K == doctest::Approx(0.5));
    CHECK(required_m(params, tv, 1, 0.1, {}) == doctest::Approx(std::pow(K, 6) * 100).epsilon(1e-12));
    CHECK(required_m(params, tv, 1, 0.1, {}) == doctest::Approx(1.5625));
    CHECK(required_m(params, tv, 1, 0.1, {3.0, 1.0}) == doctest::Approx(3 * 1.5625));
    CHECK(required_m_eps_exponent(1, 2.0) == 2.0);
    CHECK(required_m_eps_exponent(2, 2.0) == 6.0);
    CHECK(required_m_eps_exponent(1, 0.5) == 8.0);

    for (auto fam : {PhiFamily::kl(), PhiFamily::hellinger(), tv, PhiFamily::chi_squared()}) {
        double prev = INFINITY;
        for (double eps : {0.01, 0.05, 0.1, 0.3, 0.9}) {
            const double m = required_m(params, fam, 2, eps);
            CHECK(std::isfinite(m));
            CHECK(m > 0);
            CHECK(m <= prev);
            prev = m;
        }
        CHECK(required_m_integration(params, fam, 1, 0.1) > 0);
        CHECK(k12(fam, 0.1, 2.0) > 0);
    }
}

TEST_CASE("power-law tail check") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    std::cauchy_distribution<double> cauchy;
    std::vector<double> g(100000), c(100000);
    for (auto& x : g) x = z(rng);
    for (auto& x : c) x = cauchy(rng);
    const SampleMatrix gs(1, g), cs(1, c);

    const double r3[] = {3.0};
    const auto gauss = check_power_law(gs, {}, r3);
    REQUIRE(gauss.size() == 1);
    CHECK(gauss[0].empirical_tail == doctest::Approx(0.0027).epsilon(0.15));
    CHECK(gauss[0].bound == doctest::Approx(1.0 / 9));
    CHECK(gauss[0].pass);

    const double small[] = {0.5};
    CHECK(check_power_law(gs, {}, small)[0].pass);

    const double r100[] = {100.0};
    const auto cau = check_power_law(cs, {}, r100);
    CHECK(cau[0].empirical_tail == doctest::Approx(2.0 / (M_PI * 100)).epsilon(0.15));
    CHECK_FALSE(cau[0].pass);
}

TEST_CASE("integral edge bound") {
    const double lo1[] = {0.0}, hi1[] = {1.0}, half[] = {0.5};
    const auto a = integral_edge_bound(HyperRectangle::box(lo1, hi1), half);
    CHECK(a.lhs == doctest::Approx(0.25));
    CHECK(a.rhs == doctest::Approx(0.5));

    const double lo2[] = {0.0, 0.0}, hi2[] = {1.0, 1.0}, corner[] = {0.0, 0.0};
    const auto b = integral_edge_bound(HyperRectangle::box(lo2, hi2), corner);
    CHECK(b.lhs == doctest::Approx(1.0));
    CHECK(b.rhs == doctest::Approx(1.0));

    const double thin_hi[] = {1.0, 1e-9}, mid[] = {0.5, 0.0};
    const auto c = integral_edge_bound(HyperRectangle::box(lo2, thin_hi), mid);
    CHECK(c.lhs < 1e-8);
    CHECK(c.rhs < 1e-8);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0), w(0.01, 4.0), f(0.0, 1.0);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t d = 1 + t % 3;
        std::vector<double> lo(d), hi(d), x(d);
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = u(rng);
            hi[j] = lo[j] + w(rng);
            x[j] = lo[j] + f(rng) * (hi[j] - lo[j]);
        }
        const auto r = integral_edge_bound(HyperRectangle::box(lo, hi), x);
        CHECK(r.lhs <= r.rhs * (1 + 1e-12));
    }

    CHECK_THROWS_AS(integral_edge_bound(HyperRectangle::whole_space(1), half), BadParams);
}

TEST_CASE("chernoff tail") {
    CHECK(chernoff_tail(100, 10, 10) == 1.0);
    CHECK(chernoff_tail(100, 10, 30) == doctest::Approx(std::exp(-8.0)).epsilon(1e-14));
    double prev = 1.0;
    for (double t = 10; t <= 100; t += 5) {
        const double b = chernoff_tail(100, 10, t);
        CHECK(b <= prev);
        prev = b;
    }
    CHECK_THROWS_AS(chernoff_tail(100, 10, 5), BadRange);
    CHECK_THROWS_AS(chernoff_tail(100, 200, 300), BadRange);
}
