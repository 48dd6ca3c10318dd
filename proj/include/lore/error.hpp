#pragma once

#include <stdexcept>
#include <string>

namespace lore {

// Error categories map one-to-one onto CLI exit codes.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Black-box adapter failures. Transport = could not talk at all,
// Contract = the peer answered but violated the wire protocol.
struct ProtocolError : std::runtime_error {
  explicit ProtocolError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TransportError : ProtocolError {
  explicit TransportError(const std::string& msg) : ProtocolError(msg) {}
};

struct ContractViolation : ProtocolError {
  explicit ContractViolation(const std::string& msg) : ProtocolError(msg) {}
};

}  // namespace lore
