#pragma once

#include <ostream>

namespace abba::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
    ok = 0,
    usage = 1,
    parse_error = 2,
    alphabet_exhausted = 3,
    decode_error = 4,
    bound_violation = 5,
};

/// Entry point of the `abba` tool; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace abba::cli
