#pragma once

#ifdef KDGF_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

namespace kdgf::harness {
using json = nlohmann::json;
}
