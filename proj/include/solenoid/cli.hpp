#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace solenoid {

/// Entry point shared by the binary and the tests.  Exit codes: 0 all audits
/// pass, 1 an audit or run failed, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solenoid
