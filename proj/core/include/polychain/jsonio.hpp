#pragma once

#include <json.hpp>

namespace polychain {

// Insertion-ordered JSON so emitted reports are byte-stable.
using Json = nlohmann::ordered_json;

} // namespace polychain
