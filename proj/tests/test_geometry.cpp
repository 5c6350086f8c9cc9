#include "phipart/error.hpp"
#include "phipart/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace phipart;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// {(-inf, 2], (2, 4], (4, inf)}
Partition three_cells() { return Partition(1, 3, {{{2.0, 4.0}}}); }

} // namespace

TEST_CASE("ExtReal ordering keeps infinities explicit") {
    CHECK(ExtReal::neg_inf() < ExtReal::finite(-1e300));
    CHECK(ExtReal::finite(1e300) < ExtReal::pos_inf());
    CHECK(ExtReal::neg_inf() < 0.0);
    CHECK(0.0 < ExtReal::pos_inf());
    CHECK_FALSE(ExtReal::pos_inf() < ExtReal::pos_inf());
    CHECK(ExtReal::neg_inf() == ExtReal::neg_inf());
    CHECK_THROWS_AS(ExtReal::finite(kInf), BadParams);
    CHECK_THROWS_AS(ExtReal::finite(std::nan("")), BadParams);
    CHECK_THROWS(ExtReal::pos_inf().value());
}

TEST_CASE("Interval is half-open and rejects empty ranges") {
    const Interval iv(0.0, 1.0);
    CHECK_FALSE(iv.contains(0.0));
    CHECK(iv.contains(1.0));
    CHECK(iv.contains(0.5));
    CHECK_THROWS_AS(Interval(1.0, 1.0), BadParams);
    CHECK_THROWS_AS(Interval(2.0, 1.0), BadParams);
    CHECK_THROWS_AS(Interval(ExtReal::pos_inf(), ExtReal::pos_inf()), BadParams);

    const auto line = Interval::real_line();
    CHECK(line.is_real_line());
    CHECK(line.is_infinitely_large());
    CHECK_FALSE(Interval(ExtReal::neg_inf(), ExtReal::finite(0.0)).is_real_line());
    CHECK(Interval(ExtReal::neg_inf(), ExtReal::finite(0.0)).is_infinitely_large());
    CHECK(Interval(ExtReal::neg_inf(), ExtReal::finite(0.0)).contains(0.0));
    CHECK(Interval(ExtReal::finite(0.0), ExtReal::pos_inf()).contains(1e308));
}

TEST_CASE("volume") {
    const double zero[] = {0.0, 0.0};
    const double one[] = {1.0, 1.0};
    const double wide[] = {2.0, 3.0};
    CHECK(volume(HyperRectangle::box(zero, one)) == 1.0);
    CHECK(volume(HyperRectangle::box(zero, wide)) == 6.0);
    const HyperRectangle half({Interval(ExtReal::neg_inf(), ExtReal::finite(0.0)), Interval(0.0, 1.0)});
    CHECK(volume(half) == kInf);
}

TEST_CASE("max_edge_length") {
    const double zero[] = {0.0, 0.0, 0.0};
    const double one[] = {1.0, 1.0, 1.0};
    const double wide[] = {2.0, 3.0};
    CHECK(max_edge_length(HyperRectangle::box(std::span(zero, 2), wide)) == 3.0);
    CHECK(max_edge_length(HyperRectangle::box(zero, one)) == 1.0);
    const HyperRectangle right({Interval(ExtReal::finite(5.0), ExtReal::pos_inf()), Interval(0.0, 1.0)});
    CHECK(max_edge_length(right) == kInf);
}

TEST_CASE("level counts leading proper sides") {
    CHECK(HyperRectangle::whole_space(3).level() == 0);
    const HyperRectangle one_level({Interval(0.0, 1.0), Interval::real_line(), Interval::real_line()});
    CHECK(one_level.level() == 1);
    CHECK(one_level.is_infinitely_large());
    const HyperRectangle two_level({Interval(ExtReal::neg_inf(), ExtReal::finite(1.0)), Interval(0.0, 1.0)});
    CHECK(two_level.level() == 2);
}

TEST_CASE("locate honours the half-open convention") {
    const auto p = three_cells();
    const double two = 2.0, three = 3.0, hundred = 100.0, four = 4.0, low = -1e9;
    CHECK(p.locate(std::span(&two, 1)) == 0);
    CHECK(p.locate(std::span(&three, 1)) == 1);
    CHECK(p.locate(std::span(&hundred, 1)) == 2);
    CHECK(p.locate(std::span(&four, 1)) == 1);
    CHECK(p.locate(std::span(&low, 1)) == 0);
    const double pt[] = {1.0, 2.0};
    CHECK_THROWS_AS(p.locate(pt), DimensionMismatch);
}

TEST_CASE("Partition cells are the mixed-radix grid of the split table") {
    // d = 2, m0 = 2: split x at 0, then y at -1 (left) and 1 (right)
    const Partition p(2, 2, {{{0.0}}, {{-1.0}, {1.0}}});
    REQUIRE(p.size() == 4);
    CHECK(p.cell(0) == HyperRectangle({Interval(ExtReal::neg_inf(), ExtReal::finite(0.0)),
                                       Interval(ExtReal::neg_inf(), ExtReal::finite(-1.0))}));
    CHECK(p.cell(3) == HyperRectangle({Interval(ExtReal::finite(0.0), ExtReal::pos_inf()),
                                       Interval(ExtReal::finite(1.0), ExtReal::pos_inf())}));
    const double probe[] = {0.5, 0.0};
    CHECK(p.locate(probe) == 2);

    const auto rebuilt = Partition::from_cells(2, 2, p.cells());
    CHECK(rebuilt == p);

    auto broken = p.cells();
    std::swap(broken[0], broken[1]);
    CHECK_THROWS_AS(Partition::from_cells(2, 2, broken), BadParams);
}

TEST_CASE("Partition rejects malformed split tables") {
    CHECK_THROWS_AS(Partition(1, 3, {{{4.0, 2.0}}}), BadParams);
    CHECK_THROWS_AS(Partition(1, 3, {{{2.0}}}), BadParams);
    CHECK_THROWS_AS(Partition(2, 2, {{{0.0}}}), BadParams);
    CHECK_THROWS_AS(Partition(2, 2, {{{0.0}}, {{1.0}}}), BadParams);
}

TEST_CASE("every probe point lies in exactly one cell") {
    const Partition p(2, 3, {{{-1.0, 1.0}}, {{-2.0, 0.0}, {0.5, 0.6}, {-3.0, 3.0}}});
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int t = 0; t < 2000; ++t) {
        const double x[] = {u(rng), u(rng)};
        std::size_t hits = 0, where = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p.cell(i).contains(x)) {
                ++hits;
                where = i;
            }
        }
        REQUIRE(hits == 1);
        CHECK(p.locate(x) == where);
    }
    // cut values themselves
    for (double x0 : {-1.0, 1.0}) {
        for (double x1 : {-3.0, -2.0, 0.0, 0.5, 0.6, 3.0}) {
            const double x[] = {x0, x1};
            std::size_t hits = 0;
            for (const auto& c : p.cells()) hits += c.contains(x) ? 1 : 0;
            CHECK(hits == 1);
            CHECK(p.cell(p.locate(x)).contains(x));
        }
    }
}
