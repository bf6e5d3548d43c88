#pragma once

#include "scissors/samples.hpp"

namespace fixtures {
using namespace scissors;
using namespace scissors::samples;
}  // namespace fixtures
