#include "phipart/samples.hpp"

#include "phipart/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace phipart {

SampleMatrix::SampleMatrix(std::size_t d, std::vector<double> values)
    : d_(d), values_(std::move(values)) {
    if (d_ == 0 && !values_.empty()) throw DimensionMismatch("sample dimension must be positive");
    if (d_ != 0 && values_.size() % d_ != 0) {
        throw DimensionMismatch("sample buffer size is not a multiple of the dimension");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw BadParams("samples must be finite");
    }
}

SampleMatrix::SampleMatrix(std::size_t n, std::size_t d) : d_(d), values_(n * d, 0.0) {}

SampleMatrix SampleMatrix::concat(const SampleMatrix& other) const {
    if (empty()) return other;
    if (other.empty()) return *this;
    if (other.d_ != d_) throw DimensionMismatch("cannot concatenate samples of different dimension");
    std::vector<double> v = values_;
    v.insert(v.end(), other.values_.begin(), other.values_.end());
    return SampleMatrix(d_, std::move(v));
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view field, double& out) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    if (field.empty()) return false;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    return ec == std::errc() && ptr == field.data() + field.size() && std::isfinite(out);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace

SampleMatrix parse_samples_csv(const std::string& text) {
    std::vector<double> values;
    std::size_t d = 0;
    std::size_t row = 0;
    bool first_content = true;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++row;
        const auto content = trim(line);
        if (content.empty()) continue;
        const auto fields = split_commas(content);
        std::vector<double> parsed(fields.size());
        std::size_t bad = 0;
        for (std::size_t j = 0; j < fields.size() && bad == 0; ++j) {
            if (!parse_double(fields[j], parsed[j])) bad = j + 1;
        }
        if (bad != 0) {
            if (first_content) {
                // header line
                first_content = false;
                d = fields.size();
                continue;
            }
            throw ParseError("malformed number '" + std::string(trim(fields[bad - 1])) + "'", row, bad);
        }
        if (d == 0) d = fields.size();
        if (fields.size() != d) {
            throw ParseError("ragged row: expected " + std::to_string(d) + " fields, found " +
                                 std::to_string(fields.size()),
                             row, std::min(fields.size(), d) + 1);
        }
        first_content = false;
        values.insert(values.end(), parsed.begin(), parsed.end());
    }
    return SampleMatrix(d, std::move(values));
}

SampleMatrix load_samples(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string(), 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_samples_csv(buf.str());
}

std::string format_samples_csv(const SampleMatrix& samples) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < samples.rows(); ++i) {
        for (std::size_t j = 0; j < samples.dim(); ++j) {
            if (j > 0) out.push_back(',');
            const auto res = std::to_chars(buf, buf + sizeof buf, samples(i, j));
            out.append(buf, res.ptr);
        }
        out.push_back('\n');
    }
    return out;
}

void write_samples(const std::filesystem::path& path, const SampleMatrix& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << format_samples_csv(samples);
}

} // namespace phipart
