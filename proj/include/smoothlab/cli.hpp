#pragma once

namespace smoothlab {

/// Entry point of the smoothlab tool; exposed so tests can drive the CLI
/// in-process. Exit codes: 0 success, 1 genuine bound violation under valid
/// hypotheses, 2 usage error.
int cli_main(int argc, const char* const* argv);

}  // namespace smoothlab
