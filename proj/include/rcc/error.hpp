#pragma once

#include <stdexcept>
#include <string>

namespace rcc {

// Process-level error classes, mapped to CLI exit codes.
enum class ErrorCode {
    usage = 1,     // bad flags / bad arguments
    io = 2,        // file system failures
    contract = 3,  // data or contract violations (digest mismatch, parse failure, degenerate data)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

inline Error usage_error(const std::string& what) { return Error(ErrorCode::usage, what); }
inline Error io_error(const std::string& what) { return Error(ErrorCode::io, what); }
inline Error contract_error(const std::string& what) { return Error(ErrorCode::contract, what); }

}  // namespace rcc
