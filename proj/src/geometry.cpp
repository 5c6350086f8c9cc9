#include "phipart/geometry.hpp"

#include "phipart/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace phipart {

ExtReal ExtReal::finite(double v) {
    if (!std::isfinite(v)) {
        throw BadParams("ExtReal::finite given a non-finite value");
    }
    return ExtReal(Kind::Finite, v);
}

double ExtReal::value() const {
    if (kind_ != Kind::Finite) {
        throw std::logic_error("value() on an infinite ExtReal");
    }
    return value_;
}

double ExtReal::as_double() const {
    switch (kind_) {
    case Kind::NegInf: return -std::numeric_limits<double>::infinity();
    case Kind::PosInf: return std::numeric_limits<double>::infinity();
    case Kind::Finite: break;
    }
    return value_;
}

bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != ExtReal::Kind::Finite || a.value_ == b.value_;
}

bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    return a.kind_ == ExtReal::Kind::Finite && a.value_ < b.value_;
}

bool operator<(const ExtReal& a, double x) {
    if (a.is_neg_inf()) return true;
    if (a.is_pos_inf()) return false;
    return a.value_ < x;
}

bool operator<(double x, const ExtReal& a) {
    if (a.is_pos_inf()) return true;
    if (a.is_neg_inf()) return false;
    return x < a.value_;
}

std::string to_string(const ExtReal& x) {
    if (x.is_neg_inf()) return "-inf";
    if (x.is_pos_inf()) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << x.value();
    return os.str();
}

Interval::Interval(ExtReal lower, ExtReal upper) : lower_(lower), upper_(upper) {
    if (lower_.is_pos_inf() || upper_.is_neg_inf() || !(lower_ < upper_)) {
        throw BadParams("interval requires lower < upper, got (" + to_string(lower_) + ", " +
                        to_string(upper_) + "]");
    }
}

Interval::Interval(double lower, double upper)
    : Interval(ExtReal::finite(lower), ExtReal::finite(upper)) {}

Interval Interval::real_line() { return Interval(ExtReal::neg_inf(), ExtReal::pos_inf()); }

bool Interval::contains(double x) const { return lower_ < x && !(upper_ < x); }

double Interval::length() const {
    if (is_infinitely_large()) return std::numeric_limits<double>::infinity();
    return upper_.value() - lower_.value();
}

HyperRectangle::HyperRectangle(std::vector<Interval> sides) : sides_(std::move(sides)) {
    if (sides_.empty()) {
        throw DimensionMismatch("hyperrectangle needs at least one side");
    }
}

HyperRectangle HyperRectangle::whole_space(std::size_t d) {
    return HyperRectangle(std::vector<Interval>(d, Interval::real_line()));
}

HyperRectangle HyperRectangle::box(std::span<const double> lo, std::span<const double> hi) {
    if (lo.size() != hi.size()) throw DimensionMismatch("box corners differ in dimension");
    std::vector<Interval> sides;
    sides.reserve(lo.size());
    for (std::size_t j = 0; j < lo.size(); ++j) sides.emplace_back(lo[j], hi[j]);
    return HyperRectangle(std::move(sides));
}

std::size_t HyperRectangle::level() const {
    std::size_t k = 0;
    while (k < sides_.size() && !sides_[k].is_real_line()) ++k;
    return k;
}

bool HyperRectangle::is_infinitely_large() const {
    return std::any_of(sides_.begin(), sides_.end(),
                       [](const Interval& s) { return s.is_infinitely_large(); });
}

bool HyperRectangle::contains(std::span<const double> x) const {
    if (x.size() != sides_.size()) throw DimensionMismatch("point/rectangle dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!sides_[j].contains(x[j])) return false;
    }
    return true;
}

double volume(const HyperRectangle& rect) {
    double v = 1.0;
    for (const auto& s : rect.sides()) v *= s.length();
    return v;
}

double max_edge_length(const HyperRectangle& rect) {
    double l = 0.0;
    for (const auto& s : rect.sides()) l = std::max(l, s.length());
    return l;
}

std::size_t int_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) {
            throw BadRange("integer power overflows");
        }
        r *= base;
    }
    return r;
}

namespace {

Interval slab(const std::vector<double>& cuts, std::size_t j) {
    ExtReal lo = j == 0 ? ExtReal::neg_inf() : ExtReal::finite(cuts[j - 1]);
    ExtReal hi = j == cuts.size() ? ExtReal::pos_inf() : ExtReal::finite(cuts[j]);
    return Interval(lo, hi);
}

} // namespace

Partition::Partition(std::size_t d, std::size_t m0, SplitTable splits)
    : d_(d), m0_(m0), splits_(std::move(splits)) {
    if (d_ == 0 || m0_ == 0) throw BadParams("partition needs d >= 1 and m0 >= 1");
    if (splits_.size() != d_) throw BadParams("split table depth must equal d");
    for (std::size_t k = 0; k < d_; ++k) {
        if (splits_[k].size() != int_pow(m0_, k)) {
            throw BadParams("split table level " + std::to_string(k) + " has wrong node count");
        }
        for (const auto& cuts : splits_[k]) {
            if (cuts.size() != m0_ - 1) throw BadParams("split node has wrong cut count");
            for (std::size_t j = 0; j < cuts.size(); ++j) {
                if (!std::isfinite(cuts[j]) || (j > 0 && !(cuts[j - 1] < cuts[j]))) {
                    throw BadParams("split cuts must be finite and strictly increasing");
                }
            }
        }
    }

    const std::size_t m = int_pow(m0_, d_);
    cells_.reserve(m);
    std::vector<Interval> sides(d_, Interval::real_line());
    for (std::size_t idx = 0; idx < m; ++idx) {
        std::size_t node = 0;
        std::size_t rest = idx;
        std::size_t radix = m;
        for (std::size_t k = 0; k < d_; ++k) {
            radix /= m0_;
            const std::size_t j = rest / radix;
            rest %= radix;
            sides[k] = slab(splits_[k][node], j);
            node = node * m0_ + j;
        }
        cells_.emplace_back(sides);
    }
}

Partition Partition::from_cells(std::size_t d, std::size_t m0, std::vector<HyperRectangle> cells) {
    if (d == 0 || m0 == 0) throw BadParams("partition needs d >= 1 and m0 >= 1");
    const std::size_t m = int_pow(m0, d);
    if (cells.size() != m) throw BadParams("expected m0^d cells");
    for (const auto& c : cells) {
        if (c.dim() != d) throw DimensionMismatch("cell dimension differs from d");
    }
    SplitTable splits(d);
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t nodes = int_pow(m0, k);
        const std::size_t stride = m / (nodes * m0);
        splits[k].resize(nodes);
        for (std::size_t node = 0; node < nodes; ++node) {
            auto& cuts = splits[k][node];
            for (std::size_t j = 0; j + 1 < m0; ++j) {
                const auto& up = cells[node * m0 * stride + j * stride].side(k).upper();
                if (!up.is_finite()) throw BadParams("cell list is not a recursive split grid");
                cuts.push_back(up.value());
            }
        }
    }
    Partition p(d, m0, std::move(splits));
    if (p.cells_ != cells) throw BadParams("cell list is not a recursive split grid");
    return p;
}

std::size_t Partition::locate(std::span<const double> x) const {
    if (x.size() != d_) throw DimensionMismatch("point dimension differs from partition");
    std::size_t node = 0;
    for (std::size_t k = 0; k < d_; ++k) {
        const auto& cuts = splits_[k][node];
        // first cut >= x: x <= cut puts x in the lower slab
        const auto j = static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), x[k]) - cuts.begin());
        node = node * m0_ + j;
    }
    return node;
}

} // namespace phipart
