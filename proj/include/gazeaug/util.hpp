#pragma once

#include <charconv>
#include <string>

namespace gazeaug {

// Shortest decimal form that round-trips the exact double. Keeps emitted
// CSV/JSON byte-stable and re-parseable without loss.
inline std::string formatDouble(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace gazeaug
