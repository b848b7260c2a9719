#pragma once

#include <string>

namespace viag {

/// Shortest decimal representation that round-trips the double exactly
/// (std::to_chars); locale-independent, byte-stable across reruns.
std::string format_double(double value);

}  // namespace viag
