#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardyz/types.hpp"

namespace hardyz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool with argv[1..] in `args`. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "100", "1e3", "415.01-0.0027i", "2i".
std::optional<Complex> parse_complex(std::string_view text);

}  // namespace hardyz::cli
