#pragma once

#include "gestra/errors.hpp"
#include "gestra/inventory.hpp"

#include <string>
#include <vector>

namespace gestra {

/// One syllable: onset consonants, vocalic nucleus, coda consonants.
struct Syllable {
    std::vector<std::string> onset;    // 0..2 consonant symbols
    std::vector<std::string> nucleus;  // 1..3 vocalic symbols
    std::vector<std::string> coda;     // 0..2 consonant symbols

    std::vector<std::string> segments() const;
};

/// Parsed phonological input: up to three syllables.
struct Utterance {
    std::vector<Syllable> syllables;
    std::string source;
};

struct EmptySyllableError : StructureError {
    using StructureError::StructureError;
};

struct VowelAfterCodaError : StructureError {
    using StructureError::StructureError;
};

/// Parses a SAMPA utterance ("." separates syllables) by maximal-munch
/// tokenization against the inventory's phoneme symbols.
///
/// Throws UnknownSymbolError (with position), StructureError (onset/coda
/// size, nucleus size, syllable count, vowel after coda, missing nucleus,
/// empty syllable).
Utterance parse_utterance(const std::string& text, const Inventory& inv);

}  // namespace gestra
