#include "mvph/interval.hpp"

#include <cstdio>

namespace mvph {

std::string Interval::str() const {
    char buf[96];
    if (finite())
        std::snprintf(buf, sizeof buf, "[%.17g, %.17g)", birth, death);
    else
        std::snprintf(buf, sizeof buf, "[%.17g, inf)", birth);
    return buf;
}

} // namespace mvph
