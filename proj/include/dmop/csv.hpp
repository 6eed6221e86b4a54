#ifndef DMOP_CSV_HPP
#define DMOP_CSV_HPP

#include <string>

namespace dmop {

/// Shortest round-trip decimal rendering of v ('.' separator, no
/// locale). Used by every CSV writer so golden files are bit-exact.
std::string format_double(double v);

} // namespace dmop

#endif
