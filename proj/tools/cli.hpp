#pragma once

#include <iosfwd>

namespace vsharp::cli {

// Exit codes: 0 all checks pass, 1 verification failure, 2 input or I/O error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace vsharp::cli
