#pragma once

#include <iosfwd>

namespace eswp {

/// Entry point for the eswp tool. Subcommands:
///   groundstate <config>
///   run <config> [--csv]
///   sweep <config> [--eta 0,0.01,0.1,0.9] [--csv]
///   diffract <snapshot> [--phi-in deg] [--nu 1] [--k 0.066] [--threshold 0.05]
///   params <config>
/// Returns 0 on success; on failure prints one line to err and returns nonzero.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace eswp
