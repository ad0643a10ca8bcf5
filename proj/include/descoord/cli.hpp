#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace descoord {

/// Runs the command-line tool on the given arguments (without the program
/// name). Exit codes: 0 the property holds or synthesis found a certified
/// tier; 1 the property fails or only the safe tier was reached (reports
/// are still written); 2 malformed input or usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace descoord
