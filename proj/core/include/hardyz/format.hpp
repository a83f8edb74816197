#pragma once

#include <string>

namespace hardyz {

/// Shortest-form %.17g rendering; identical bytes on every run.
std::string format_double(double v);

}  // namespace hardyz
