#include "specsense/tracy_widom.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef SPECSENSE_TW_TABLE_DEFAULT
#define SPECSENSE_TW_TABLE_DEFAULT "data/tw2_cdf.csv"
#endif

namespace specsense {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ull;
    }
    return h;
}

Tw2Table Tw2Table::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("Tw2Table: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string raw = buffer.str();

    Tw2Table table;
    table.checksum_ = fnv1a64(raw.data(), raw.size());

    std::vector<double> s, f;
    std::istringstream lines(raw);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("Tw2Table: malformed row in " + path + ": " + line);
        s.push_back(std::stod(line.substr(0, comma)));
        f.push_back(std::stod(line.substr(comma + 1)));
    }
    if (s.size() < 4) throw std::runtime_error("Tw2Table: table too small in " + path);

    const double step = s[1] - s[0];
    for (size_t i = 1; i < s.size(); ++i) {
        if (std::abs((s[i] - s[i - 1]) - step) > 1e-9)
            throw std::runtime_error("Tw2Table: grid not uniform in " + path);
        if (!(f[i] > f[i - 1]))
            throw std::runtime_error("Tw2Table: CDF values not strictly increasing in " + path);
    }
    if (f.front() >= 1e-6 || f.back() <= 1.0 - 1e-6)
        throw std::runtime_error("Tw2Table: endpoints do not cover the distribution tails");

    table.s_min_ = s.front();
    table.step_ = step;
    table.f_ = std::move(f);

    // Fritsch-Carlson tangents: monotone cubic Hermite interpolation.
    const size_t n = table.f_.size();
    std::vector<double> slope(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) slope[i] = (table.f_[i + 1] - table.f_[i]) / step;
    table.d_.resize(n);
    table.d_[0] = slope.front();
    table.d_[n - 1] = slope.back();
    for (size_t i = 1; i + 1 < n; ++i) table.d_[i] = 0.5 * (slope[i - 1] + slope[i]);
    for (size_t i = 0; i + 1 < n; ++i) {
        const double a = table.d_[i] / slope[i];
        const double b = table.d_[i + 1] / slope[i];
        const double r2 = a * a + b * b;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            table.d_[i] = tau * a * slope[i];
            table.d_[i + 1] = tau * b * slope[i];
        }
    }
    return table;
}

const Tw2Table& Tw2Table::instance() {
    static const Tw2Table table = [] {
        const char* env = std::getenv("SPECSENSE_TW_TABLE");
        return load(env ? env : SPECSENSE_TW_TABLE_DEFAULT);
    }();
    return table;
}

double Tw2Table::cdf(double s) const {
    if (std::isnan(s)) throw std::invalid_argument("tw2_cdf: NaN argument");
    if (s <= s_min_) return f_.front();
    if (s >= s_max()) return f_.back();
    const double u = (s - s_min_) / step_;
    size_t i = static_cast<size_t>(u);
    if (i >= f_.size() - 1) i = f_.size() - 2;
    const double t = u - static_cast<double>(i);
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * f_[i] + h10 * step_ * d_[i] + h01 * f_[i + 1] + h11 * step_ * d_[i + 1];
}

double tw2_cdf(double s) { return Tw2Table::instance().cdf(s); }

}  // namespace specsense
