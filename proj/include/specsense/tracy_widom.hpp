#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace specsense {

/// Tracy-Widom order-2 CDF backed by a precomputed tabulation on a
/// uniform grid with monotone cubic (Fritsch-Carlson) interpolation.
/// The table ships as a CSV data file; see data/tw2_cdf.csv. Arguments
/// outside the grid clamp to the endpoint values, which are within 1e-6
/// of 0 and 1 respectively.
class Tw2Table {
public:
    /// Loads and validates a table file ("s,F2" rows, '#' comments).
    static Tw2Table load(const std::string& path);

    /// Process-wide table, loaded once from $SPECSENSE_TW_TABLE or the
    /// compiled-in default path.
    static const Tw2Table& instance();

    double cdf(double s) const;

    double s_min() const { return s_min_; }
    double s_max() const { return s_min_ + step_ * (static_cast<double>(f_.size()) - 1.0); }
    std::size_t size() const { return f_.size(); }
    /// Guaranteed absolute error bound of the tabulation + interpolation.
    double accuracy() const { return 1e-4; }

    /// FNV-1a 64 of the raw file bytes; used by the integrity test and
    /// the tw-check CLI subcommand.
    std::uint64_t file_checksum() const { return checksum_; }

private:
    Tw2Table() = default;

    double s_min_ = 0.0;
    double step_ = 0.0;
    std::vector<double> f_;  // CDF values, strictly increasing
    std::vector<double> d_;  // Fritsch-Carlson tangents
    std::uint64_t checksum_ = 0;
};

/// F2(s) via the shared table. Throws on NaN.
double tw2_cdf(double s);

std::uint64_t fnv1a64(const void* data, std::size_t size);

}  // namespace specsense
