#pragma once

#include <complex>
#include <string>

namespace reslab {

// fixed-width, locale-independent number formatting for CSV/JSON artifacts
std::string fmt_num(double x);

}  // namespace reslab
