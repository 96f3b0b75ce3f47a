#pragma once

#include "json.hpp"
#include "specsense/model.hpp"

// Trial-log JSON forms: complex numbers serialize as [re, im] pairs.

namespace specsense {

void to_json(nlohmann::json& j, const ChannelRealization& ch);
void from_json(const nlohmann::json& j, ChannelRealization& ch);

void to_json(nlohmann::json& j, const ObservationBlock& block);

}  // namespace specsense
