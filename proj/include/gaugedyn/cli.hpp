#pragma once

#include <ostream>

namespace gaugedyn {

// Full command-line front end: parses argv, dispatches to the library,
// writes data to `out` and diagnostics to `err`.
// Exit codes: 0 success, 2 domain/precondition errors, 3 budget errors,
// 64 usage errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gaugedyn
