#pragma once

#include <stdexcept>
#include <string>

namespace gdmorph {

/// Raised for malformed user input: bad files, invalid parameters,
/// mismatched sizes. The CLI maps this to exit code 1; any other
/// exception maps to exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gdmorph
