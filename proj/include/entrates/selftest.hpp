#pragma once

#include <iosfwd>

namespace entrates::selftest {

/// Quick oracle-equivalence checks; one PASS/FAIL line each. True when all pass.
bool run(std::ostream& out);

}  // namespace entrates::selftest
