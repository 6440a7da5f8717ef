#pragma once

#include <cstdio>
#include <string>

namespace fiberphase {

// %.17g round-trips doubles exactly; snprintf with a fixed format keeps the
// output independent of stream state and locale.
inline std::string format_double(double v) {
    if (v == 0.0) return "0"; // fold away the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_double_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace fiberphase
