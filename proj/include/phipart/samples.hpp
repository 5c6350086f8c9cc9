#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace phipart {

/// n points in R^d, row-major. All entries finite.
class SampleMatrix {
public:
    SampleMatrix() = default;
    SampleMatrix(std::size_t d, std::vector<double> values);
    SampleMatrix(std::size_t n, std::size_t d);

    std::size_t rows() const { return d_ == 0 ? 0 : values_.size() / d_; }
    std::size_t dim() const { return d_; }
    bool empty() const { return values_.empty(); }

    std::span<const double> row(std::size_t i) const { return {values_.data() + i * d_, d_}; }
    std::span<double> row(std::size_t i) { return {values_.data() + i * d_, d_}; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * d_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * d_ + j]; }
    const std::vector<double>& values() const { return values_; }

    /// Rows of `this` followed by rows of `other`.
    SampleMatrix concat(const SampleMatrix& other) const;

    friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

private:
    std::size_t d_ = 0;
    std::vector<double> values_;
};

/// Reads one point per line, comma separated. A first line that does not
/// parse as numbers is treated as a header. Throws ParseError with location.
SampleMatrix load_samples(const std::filesystem::path& path);
SampleMatrix parse_samples_csv(const std::string& text);
/// Shortest round-trip decimal representation of every value.
void write_samples(const std::filesystem::path& path, const SampleMatrix& samples);
std::string format_samples_csv(const SampleMatrix& samples);

} // namespace phipart
