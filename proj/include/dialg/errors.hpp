#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dialg {

// Malformed arguments: length mismatches, out-of-range slots, mixed fields.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured size cap (enumeration degree, CLI degree) was exceeded.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(const std::string& what, std::size_t cap)
        : std::runtime_error(what), cap_(cap) {}
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

// Positive-characteristic verification requested at a degree d >= p.
class CharacteristicGuardError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace dialg
