#pragma once

#include <cstdint>

#include "hearth/devices/script.hpp"

namespace hearth::devices {

/// One day in the life of an elderly resident, in four phases:
/// night (00-06) bathroom trips with motion and lights, morning (06-09)
/// lights coming on, daytime (09-18) manual switch use and short outings,
/// evening (18-24) door activity and lights. Step times carry a seeded
/// jitter of up to five minutes.
ScenarioScript elderly_day_script(std::uint64_t seed);

}  // namespace hearth::devices
