#pragma once

#include <ostream>

namespace jetinv::cli {

// Exit codes: 0 all requested checks pass, 1 verification failure,
// 2 usage error, 3 parse error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jetinv::cli
