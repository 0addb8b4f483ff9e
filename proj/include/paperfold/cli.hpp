/*
 * Command-line surface.  Exit codes: 0 success / check verified, 1 check
 * failure, 2 usage or input error.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paperfold {

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paperfold
