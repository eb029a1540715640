#pragma once

#include <string>

namespace heatlab {

// Shortest round-trip decimal form; stable across runs and platforms using
// the same library, which is what the byte-identical artifact contract needs.
std::string format_double(double x);

}  // namespace heatlab
