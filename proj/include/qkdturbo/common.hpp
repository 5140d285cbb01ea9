#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qkdturbo {

/// One bit per element, values restricted to {0, 1}.
using Bits = std::vector<std::uint8_t>;

/// Per-bit log-likelihood ratios. Sign convention everywhere in this
/// library: positive LLR means bit 0 is the more likely value.
using Llrs = std::vector<double>;

/// A configuration failed validation (bad polynomials, broken interleaver, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The reconciliation protocol cannot proceed (key too short, estimated
/// crossover at or above 1/2, ...).
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qkdturbo
