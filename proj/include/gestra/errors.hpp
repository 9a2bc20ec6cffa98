#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gestra {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed structured-text document (inventory, syllabary, score JSON).
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : Error(line ? msg + " (line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ")"
                     : msg),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

/// Inventory semantic problem: dangling spec reference, range violation,
/// arity violation of the phoneme map.
struct InventoryError : Error {
    using Error::Error;
};

/// Utterance symbol not present in the inventory's phoneme map.
struct UnknownSymbolError : Error {
    UnknownSymbolError(const std::string& msg, std::size_t position)
        : Error(msg + " (position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

/// Syllable-structure constraint violation.
struct StructureError : Error {
    using Error::Error;
};

}  // namespace gestra
