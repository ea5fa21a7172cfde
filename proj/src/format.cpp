#include "reslab/format.hpp"

#include <cmath>
#include <cstdio>

namespace reslab {

std::string fmt_num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16g", x);
    return buf;
}

}  // namespace reslab
