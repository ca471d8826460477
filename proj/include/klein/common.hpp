#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace klein {

/// Thrown when an enumeration would exceed one of the configured caps
/// (field order, point count, group order, factorial scan, matrix scan).
/// `partial` carries how far the enumeration got before giving up.
class cap_exceeded : public std::runtime_error {
public:
    cap_exceeded(std::string what, std::uint64_t cap, std::uint64_t partial)
        : std::runtime_error(std::move(what)), cap_(cap), partial_(partial) {}

    std::uint64_t cap() const { return cap_; }
    std::uint64_t partial() const { return partial_; }

private:
    std::uint64_t cap_;
    std::uint64_t partial_;
};

/// Thrown when an internal exhaustive self-check fails. Signals a bug in
/// this library, never a property of the mathematical input.
class internal_check_failure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw internal_check_failure(msg);
}

} // namespace detail

} // namespace klein
