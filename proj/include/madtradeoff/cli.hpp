#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace madt::cli {

inline constexpr const char* kVersion = "0.1.0";

// exit status: 0 success, 1 usage error, 2 inequality violation found
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace madt::cli
