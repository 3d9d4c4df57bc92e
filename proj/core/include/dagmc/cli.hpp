#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dagmc {

// Command line front end. `args` excludes the program name; "-" as a file
// argument reads from `in`. Returns the process exit code: 0 for a completed
// computation (YES and NO both count), 2 for usage, parse, or input errors,
// 3 for guard violations such as TooLarge.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dagmc
