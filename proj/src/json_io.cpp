#include "specsense/json_io.hpp"

namespace specsense {

using nlohmann::json;

namespace {

json complex_to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

void to_json(json& j, const ChannelRealization& ch) {
    json rows = json::array();
    for (Eigen::Index k = 0; k < ch.taps.rows(); ++k) {
        json row = json::array();
        for (Eigen::Index i = 0; i < ch.taps.cols(); ++i) row.push_back(complex_to_json(ch.taps(k, i)));
        rows.push_back(row);
    }
    j = json{{"taps", rows},
             {"mode", ch.mode == ReceiveMode::MultiAntenna ? "multi-antenna" : "over-sampling"}};
}

void from_json(const json& j, ChannelRealization& ch) {
    const auto& rows = j.at("taps");
    const auto k_count = static_cast<Eigen::Index>(rows.size());
    const auto l_count = k_count ? static_cast<Eigen::Index>(rows.at(0).size()) : 0;
    ch.taps.resize(k_count, l_count);
    for (Eigen::Index k = 0; k < k_count; ++k)
        for (Eigen::Index i = 0; i < l_count; ++i)
            ch.taps(k, i) = complex_from_json(rows.at(static_cast<size_t>(k)).at(static_cast<size_t>(i)));
    ch.mode = j.at("mode").get<std::string>() == "over-sampling" ? ReceiveMode::OverSampling
                                                                 : ReceiveMode::MultiAntenna;
}

void to_json(json& j, const ObservationBlock& block) {
    json cols = json::array();
    for (Eigen::Index i = 0; i < block.vectors.cols(); ++i) {
        json col = json::array();
        for (Eigen::Index r = 0; r < block.vectors.rows(); ++r)
            col.push_back(complex_to_json(block.vectors(r, i)));
        cols.push_back(col);
    }
    j = json{{"vectors", cols},
             {"hypothesis", block.hypothesis == Hypothesis::H0 ? "H0" : "H1"},
             {"noise_power", block.noise_power},
             {"dims",
              {{"M", block.dims.M()}, {"K", block.dims.K()}, {"L", block.dims.L()},
               {"N", block.dims.N()}}}};
}

}  // namespace specsense
