#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsegre::cli {

/// Runs one command. Exit codes: 0 success, 1 verification failure, 2 parse
/// error in a state expression, 3 usage or dimension error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qsegre::cli
