#include "igw/format.hpp"

#include <cstdio>

namespace igw {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace igw
