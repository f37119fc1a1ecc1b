#pragma once

#include <stdexcept>
#include <string>

namespace latbgp {

/// Error classes map one-to-one onto the CLI exit-status convention:
/// 1 internal, 2 usage/bad input, 3 empty or degenerate data.
enum class ErrorKind { Internal = 1, Usage = 2, EmptyData = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

inline Error usage_error(const std::string& msg) { return Error(ErrorKind::Usage, msg); }
inline Error data_error(const std::string& msg) { return Error(ErrorKind::EmptyData, msg); }
inline Error internal_error(const std::string& msg) { return Error(ErrorKind::Internal, msg); }

} // namespace latbgp
