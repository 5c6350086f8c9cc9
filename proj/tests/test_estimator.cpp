#include "phipart/error.hpp"
#include "phipart/estimator.hpp"

#include <doctest.h>

#include <random>

using namespace phipart;

namespace {

SampleMatrix line(std::vector<double> xs) { return SampleMatrix(1, std::move(xs)); }

SampleMatrix gaussian_cloud(std::size_t n, std::size_t d, double shift, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(shift, 1.0);
    std::vector<double> v(n * d);
    for (auto& x : v) x = z(rng);
    return SampleMatrix(d, std::move(v));
}

const PhiKind kAll[] = {PhiKind::KL, PhiKind::Hellinger, PhiKind::TotalVariation, PhiKind::ChiSquared};

} // namespace

TEST_CASE("identical sample sets give exactly zero") {
    for (auto kind : kAll) {
        const auto fam = PhiFamily::builtin(kind);
        for (std::size_t d : {1u, 2u}) {
            const auto s = gaussian_cloud(400, d, 0.0, 17);
            CHECK(estimate_divergence(s, s, 2, fam).value == 0.0);
        }
    }
}

TEST_CASE("hand example on three cells") {
    const auto q = line({1, 2, 3, 4, 5, 6});
    // P counts (2, 1, 0) of n1 = 3: ratios 2, 1, 0
    const auto p = line({0.0, 1.5, 3.0});
    const auto tv = estimate_divergence(p, q, 3, PhiFamily::total_variation());
    CHECK(tv.value == doctest::Approx((0.5 + 0.0 + 0.5) / 3.0));
    CHECK(tv.m == 3);
    CHECK(tv.n1 == 3);
    CHECK(tv.n2 == 6);
    REQUIRE(tv.per_cell.size() == 3);
    CHECK(tv.per_cell[0].ratio == doctest::Approx(2.0));
    CHECK(tv.per_cell[2].p_count == 0);

    const auto chi2 = estimate_divergence(p, q, 3, PhiFamily::chi_squared());
    CHECK(chi2.value == doctest::Approx((1.0 + 0.0 + 1.0) / 3.0));
}

TEST_CASE("all P mass in one cell") {
    const auto q = line({1, 2, 3, 4, 5, 6, 7, 8});
    const auto p = line({100, 101});
    // ratio m in one cell, 0 elsewhere
    CHECK(estimate_divergence(p, q, 4, PhiFamily::chi_squared()).value == doctest::Approx(3.0));
    CHECK(estimate_divergence(p, q, 4, PhiFamily::kl()).value == doctest::Approx(std::log(4.0)));
    CHECK(estimate_divergence(p, q, 4, PhiFamily::total_variation()).value == doctest::Approx(0.75));
}

TEST_CASE("nonnegative on random inputs") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto kind = kAll[t % 4];
        const std::size_t d = 1 + t % 2;
        const std::size_t m0 = 2 + t % 3;
        const std::size_t m = d == 1 ? m0 : m0 * m0;
        const auto q = gaussian_cloud(m * (1 + rng() % 20), d, 0.0, rng());
        const auto p = gaussian_cloud(1 + rng() % 50, d, (rng() % 100) / 25.0, rng());
        CHECK(estimate_divergence(p, q, m0, PhiFamily::builtin(kind)).value >= -1e-12);
    }
}

TEST_CASE("unweighted diagnostic") {
    const auto q = line({1, 2, 3, 4, 5, 6});
    const auto p = line({0.0, 1.5, 3.0});
    const auto part = build_partition(q, 3);
    const auto r = estimate_on_partition(part, p, 6, PhiFamily::total_variation(), true);
    CHECK(r.value == doctest::Approx(1.0));
}

TEST_CASE("estimate_with_partition") {
    const auto q = line({1, 2, 3, 4, 5, 6});
    const auto p = line({0.0, 1.5, 3.0});
    const auto part = build_partition(q, 3);
    const auto fam = PhiFamily::kl();

    const double third[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(estimate_with_partition(part, p, fam, third).value ==
          doctest::Approx(estimate_divergence(p, q, 3, fam).value).epsilon(1e-14));

    const double w[] = {0.5, 0.5, 0.0};
    const auto r = estimate_with_partition(part, p, fam, w);
    CHECK(r.value == doctest::Approx((2.0 / 3) * std::log(4.0 / 3) + (1.0 / 3) * std::log(2.0 / 3)));

    const double hole[] = {0.0, 0.5, 0.5};
    CHECK_THROWS_AS(estimate_with_partition(part, p, fam, hole), ZeroMass);
    const double unnormalised[] = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(estimate_with_partition(part, p, fam, unnormalised), BadParams);
    const double short_w[] = {0.5, 0.5};
    CHECK_THROWS(estimate_with_partition(part, p, fam, short_w));
}

TEST_CASE("discretized_divergence") {
    const double p[] = {0.5, 0.5, 0.0};
    const double q[] = {0.25, 0.25, 0.5};
    CHECK(discretized_divergence(p, q, PhiFamily::total_variation()) == doctest::Approx(0.5));
    CHECK(discretized_divergence(p, q, PhiFamily::kl()) == doctest::Approx(std::log(2.0)));
    CHECK(discretized_divergence(q, q, PhiFamily::hellinger()) == 0.0);
    const double q0[] = {0.5, 0.5, 0.0};
    const double p1[] = {0.25, 0.25, 0.5};
    CHECK_THROWS_AS(discretized_divergence(p1, q0, PhiFamily::kl()), ZeroMass);
}

TEST_CASE("total variation on the four-point example") {
    const auto r = estimate_divergence(line({0, 3, 3.5, 10}), line({1, 2, 3, 4, 5, 6}), 3,
                                       PhiFamily::total_variation());
    CHECK(r.value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(r.per_cell[0].ratio == doctest::Approx(0.75));
    CHECK(r.per_cell[1].ratio == doctest::Approx(1.5));
    double sum = 0.0;
    std::size_t pc = 0, qc = 0;
    for (const auto& c : r.per_cell) {
        sum += c.contribution;
        pc += c.p_count;
        qc += c.q_count;
        CHECK(c.q_count == 2);
    }
    CHECK(sum == doctest::Approx(r.value));
    CHECK(pc == 4);
    CHECK(qc == 6);
}
