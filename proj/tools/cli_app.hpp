#pragma once

// CLI front end: every verification and sweep as a subcommand.
// Exit codes: 0 all checks pass, 1 failed check, 2 invalid flags, 3 I/O failure.

namespace qdl_cli {

int run(int argc, const char* const* argv);

}  // namespace qdl_cli
