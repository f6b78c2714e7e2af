#pragma once

#include <stdexcept>
#include <string>

namespace sru {

/// Raised for every contract violation in the library (bad input, unphysical
/// state, leaking wavepacket). The message is meant for end users.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sru
