#ifndef KOLPORTRAIT_CLI_HPP
#define KOLPORTRAIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kolportrait {

// Exit codes: 0 success, 2 validation failure, 3 internal table/sector
// mismatch, 1 usage or I/O errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolportrait

#endif
