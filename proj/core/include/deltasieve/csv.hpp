#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace deltasieve::csv {

// Shortest round-trip decimal for a double ("%.17g"); NaN renders as empty.
std::string num(double x);
std::string num(long long x);
// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string field(const std::string& s);
void write_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace deltasieve::csv
