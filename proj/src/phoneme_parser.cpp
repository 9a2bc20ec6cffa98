#include "gestra/phoneme_parser.hpp"

#include <algorithm>

namespace gestra {

std::vector<std::string> Syllable::segments() const {
    std::vector<std::string> out;
    out.reserve(onset.size() + nucleus.size() + coda.size());
    out.insert(out.end(), onset.begin(), onset.end());
    out.insert(out.end(), nucleus.begin(), nucleus.end());
    out.insert(out.end(), coda.begin(), coda.end());
    return out;
}

namespace {

// Longest inventory symbol matching text at pos; empty if none.
std::string munch(const std::string& text, std::size_t pos, const Inventory& inv) {
    std::string best;
    for (const auto& [symbol, names] : inv.phoneme_map) {
        if (symbol.size() <= best.size()) continue;
        if (text.compare(pos, symbol.size(), symbol) == 0) best = symbol;
    }
    return best;
}

Syllable parse_syllable(const std::string& text, std::size_t begin,
                        std::size_t end, const Inventory& inv) {
    if (begin == end) {
        throw EmptySyllableError("empty syllable in utterance '" + text + "'");
    }
    Syllable syl;
    bool seen_vowel = false;
    std::size_t pos = begin;
    while (pos < end) {
        const std::string symbol = munch(text, pos, inv);
        if (symbol.empty() || pos + symbol.size() > end) {
            throw UnknownSymbolError(
                "unknown symbol at '" + text.substr(pos, end - pos) + "'", pos);
        }
        if (is_vowel(inv, symbol)) {
            if (!syl.coda.empty()) {
                throw VowelAfterCodaError("vowel '" + symbol +
                                          "' after coda consonant; nucleus must be contiguous");
            }
            syl.nucleus.push_back(symbol);
            if (syl.nucleus.size() > 3) {
                throw StructureError("more than 3 vocalic segments in nucleus");
            }
            seen_vowel = true;
        } else if (!seen_vowel) {
            syl.onset.push_back(symbol);
            if (syl.onset.size() > 2) {
                throw StructureError("more than 2 consonants in syllable onset");
            }
        } else {
            syl.coda.push_back(symbol);
            if (syl.coda.size() > 2) {
                throw StructureError("more than 2 consonants in syllable coda");
            }
        }
        pos += symbol.size();
    }
    if (syl.nucleus.empty()) {
        throw StructureError("syllable without vocalic nucleus");
    }
    return syl;
}

}  // namespace

Utterance parse_utterance(const std::string& text, const Inventory& inv) {
    if (text.empty()) {
        throw EmptySyllableError("empty utterance");
    }
    Utterance u;
    u.source = text;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = text.find('.', start);
        const std::size_t end = dot == std::string::npos ? text.size() : dot;
        u.syllables.push_back(parse_syllable(text, start, end, inv));
        if (u.syllables.size() > 3) {
            throw StructureError("more than 3 syllables in utterance");
        }
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return u;
}

}  // namespace gestra
