#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace phipart {

/// A point of the extended real line. Infinities are explicit states rather
/// than IEEE infinities so that comparisons never meet NaN.
class ExtReal {
public:
    enum class Kind { NegInf, Finite, PosInf };

    constexpr ExtReal() = default;
    static ExtReal finite(double v);
    static constexpr ExtReal neg_inf() { return ExtReal(Kind::NegInf, 0.0); }
    static constexpr ExtReal pos_inf() { return ExtReal(Kind::PosInf, 0.0); }

    constexpr Kind kind() const { return kind_; }
    constexpr bool is_finite() const { return kind_ == Kind::Finite; }
    constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    /// Finite value; throws std::logic_error on an infinity.
    double value() const;
    /// IEEE view, for arithmetic that wants +-infinity.
    double as_double() const;

    friend bool operator==(const ExtReal& a, const ExtReal& b);
    friend bool operator<(const ExtReal& a, const ExtReal& b);
    friend bool operator<(const ExtReal& a, double x);
    friend bool operator<(double x, const ExtReal& a);

private:
    constexpr ExtReal(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_ = Kind::Finite;
    double value_ = 0.0;
};

std::string to_string(const ExtReal& x);

/// Half-open interval (lower, upper]. The unbounded forms are (-inf, a],
/// (b, +inf) and the whole line (-inf, +inf).
class Interval {
public:
    Interval(ExtReal lower, ExtReal upper);
    Interval(double lower, double upper);
    static Interval real_line();

    const ExtReal& lower() const { return lower_; }
    const ExtReal& upper() const { return upper_; }

    bool contains(double x) const;
    bool is_real_line() const { return lower_.is_neg_inf() && upper_.is_pos_inf(); }
    /// Contains -inf or +inf.
    bool is_infinitely_large() const { return !lower_.is_finite() || !upper_.is_finite(); }
    /// +inf when unbounded.
    double length() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    ExtReal lower_;
    ExtReal upper_;
};

class HyperRectangle {
public:
    explicit HyperRectangle(std::vector<Interval> sides);
    /// All of R^d.
    static HyperRectangle whole_space(std::size_t d);
    /// Bounded box (lo_j, hi_j].
    static HyperRectangle box(std::span<const double> lo, std::span<const double> hi);

    std::size_t dim() const { return sides_.size(); }
    const std::vector<Interval>& sides() const { return sides_; }
    const Interval& side(std::size_t j) const { return sides_[j]; }

    /// Number of leading sides that are proper intervals, provided the rest
    /// are all of R; a rectangle not of that shape reports its proper-side count.
    std::size_t level() const;
    bool is_infinitely_large() const;
    bool is_bounded() const { return !is_infinitely_large(); }
    bool contains(std::span<const double> x) const;

    friend bool operator==(const HyperRectangle&, const HyperRectangle&) = default;

private:
    std::vector<Interval> sides_;
};

/// Product of side lengths; +inf if any side is unbounded.
double volume(const HyperRectangle& rect);
/// Largest side length; +inf if any side is unbounded.
double max_edge_length(const HyperRectangle& rect);

/// m0^d cells produced by coordinate-wise recursive splitting. Cell index is
/// the mixed-radix number of slab indices, first dimension most significant.
class Partition {
public:
    /// cuts[k][node] holds the m0-1 increasing cut values used at depth k on the
    /// node whose slab prefix (dimensions 0..k-1) has mixed-radix index `node`.
    using SplitTable = std::vector<std::vector<std::vector<double>>>;

    Partition(std::size_t d, std::size_t m0, SplitTable splits);
    /// Rebuilds the split table from an explicit cell list (e.g. read from
    /// JSON). Throws BadParams if the cells are not a recursive split grid.
    static Partition from_cells(std::size_t d, std::size_t m0, std::vector<HyperRectangle> cells);

    std::size_t dim() const { return d_; }
    std::size_t m0() const { return m0_; }
    std::size_t size() const { return cells_.size(); }
    const std::vector<HyperRectangle>& cells() const { return cells_; }
    const HyperRectangle& cell(std::size_t i) const { return cells_[i]; }
    const SplitTable& split_values() const { return splits_; }

    /// Index of the unique cell containing x. Points on a cut fall in the lower cell.
    std::size_t locate(std::span<const double> x) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::size_t d_;
    std::size_t m0_;
    SplitTable splits_;
    std::vector<HyperRectangle> cells_;
};

std::size_t int_pow(std::size_t base, std::size_t exp);

} // namespace phipart
