#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hdeform::cli {

/// Exit codes: 0 all checks passed, 1 a check failed (or an obstruction with
/// --expect-success), 2 bad usage or unreadable input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdeform::cli
