#pragma once

#include <stdexcept>
#include <string>

namespace tanglekit {

// Checkerboard colors of complementary regions.
enum class Color : unsigned char { black, white };

constexpr Color flip(Color c) noexcept {
    return c == Color::black ? Color::white : Color::black;
}

inline const char* to_string(Color c) noexcept {
    return c == Color::black ? "b" : "w";
}

// Domain errors. Everything thrown by the library derives from tk_error so
// callers (the CLI in particular) can distinguish domain failures from bugs.
struct tk_error : std::runtime_error {
    explicit tk_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct validation_error : tk_error {
    using tk_error::tk_error;
};

// Arity/shading/index failures of tangle composition.
struct composition_error : tk_error {
    using tk_error::tk_error;
};

// Weight mismatch along a glued boundary.
struct sewing_error : tk_error {
    using tk_error::tk_error;
};

struct capacity_error : tk_error {
    using tk_error::tk_error;
};

struct evaluation_error : tk_error {
    using tk_error::tk_error;
};

// Root-finder or curve-tracer failures, with diagnostic payload in the message.
struct numeric_error : tk_error {
    using tk_error::tk_error;
};

struct parse_error : tk_error {
    using tk_error::tk_error;
};

} // namespace tanglekit
