#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qpovm {

// Library error carrying a short machine-readable code ("BadEta",
// "NotHermitian", ...) next to the human-readable message. The CLI turns
// these into its JSON error objects.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace qpovm
