#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace argil::cli {

//! Runs the `argil` command line on `args` (without the program name).
//!
//! Returns 0 on success, 1 on domain errors and 2 on usage or parse errors.
int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace argil::cli
