#pragma once

#include <stdexcept>
#include <string>

namespace hopfdual {

/// Library-wide error type. `code()` is a stable machine-readable tag
/// (NotHermitian, RankDeficient, SplitFailure, ExtensionInconsistent, ...)
/// while what() carries human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace hopfdual
