#pragma once

#include <string_view>

#include "hearth/config/config.hpp"

namespace hearth::harness {

/// The shipped home configuration (identical to config/sample.yaml).
std::string_view sample_config_text();
config::ValidatedConfig sample_config();

}  // namespace hearth::harness
