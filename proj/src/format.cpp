#include "viag/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace viag {

std::string format_double(double value) {
  if (std::signbit(value) && value == 0.0) value = 0.0;
  char buffer[40];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace viag
