#pragma once

#include <string>

namespace mms {

/// Shortest decimal string that round-trips the double exactly.
std::string fmt_shortest(double v);

/// Fixed significant-digit formatting ("%.{sig}g").
std::string fmt_sig(double v, int sig);

}  // namespace mms
