#ifndef ZETALAB_CLI_RUN_HPP
#define ZETALAB_CLI_RUN_HPP

#include <iosfwd>

namespace zetalab::cli {

/// The whole command line: 0 all checks pass, 1 a check failed, 2 usage
/// error, 3 numerical budget exhausted.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zetalab::cli

#endif
