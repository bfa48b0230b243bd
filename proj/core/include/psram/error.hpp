#pragma once

#include <stdexcept>
#include <string>

namespace psram {

// Invalid configuration or argument. Message names the offending field.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Mesh program violated the network-model contract at run time.
class ProtocolError : public std::runtime_error {
public:
    ProtocolError(const std::string& what, std::size_t step, std::size_t cell)
        : std::runtime_error(what + " (step " + std::to_string(step) + ", cell " +
                             std::to_string(cell) + ")"),
          step_(step),
          cell_(cell) {}

    std::size_t step() const noexcept { return step_; }
    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t step_;
    std::size_t cell_;
};

// Euler state lost positivity; usually the time-step constant is too large.
class PositivityError : public std::runtime_error {
public:
    PositivityError(std::size_t index, std::size_t step)
        : std::runtime_error("non-positive density or pressure at grid index " +
                             std::to_string(index) + ", step " + std::to_string(step)),
          index_(index),
          step_(step) {}

    std::size_t index() const noexcept { return index_; }
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t index_;
    std::size_t step_;
};

// Malformed input text (e.g. a .tns file). Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace psram
