#ifndef QKOSZUL_ERRORS_HPP
#define QKOSZUL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qkoszul {

// Input text could not be parsed; position is a byte offset when known.
struct ParseError : std::runtime_error {
    std::size_t position;

    explicit ParseError(const std::string& what, std::size_t pos = static_cast<std::size_t>(-1))
        : std::runtime_error(what), position(pos)
    {
    }
};

// A mathematical hypothesis of the analysis fails for the given input
// (non-minimal presentation, wrong relator depth, a form outside the
// normalizable shapes, ...).  These are user-facing verdicts, not bugs.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qkoszul

#endif
