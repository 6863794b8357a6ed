#ifndef PORDER_WORD_HPP
#define PORDER_WORD_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace porder {

// Binary words over {0,1}; the empty word is allowed everywhere.
using Word = std::string;

inline bool is_bits(std::string_view w) {
    for (char c : w)
        if (c != '0' && c != '1') return false;
    return true;
}

inline Word word_of(uint64_t value, size_t width) {
    if (width < 64 && (value >> width) != 0)
        throw std::invalid_argument("word_of: value does not fit in width");
    Word w(width, '0');
    for (size_t i = 0; i < width; ++i)
        if ((value >> (width - 1 - i)) & 1u) w[i] = '1';
    return w;
}

// Big-endian value of a short word (fits in 64 bits).
inline uint64_t bits_value(std::string_view w) {
    if (w.size() > 63) throw std::invalid_argument("bits_value: word too long");
    uint64_t v = 0;
    for (char c : w) v = (v << 1) | (c == '1' ? 1u : 0u);
    return v;
}

inline size_t popcount_word(std::string_view w) {
    size_t k = 0;
    for (char c : w) k += (c == '1');
    return k;
}

inline bool lex_less(std::string_view a, std::string_view b) { return a < b; }

inline bool shortlex_leq(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a <= b;
}

inline bool shortlex_less(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Fixed-width binary increment; nullopt on overflow (input all ones).
inline std::optional<Word> lex_increment(Word w) {
    for (size_t i = w.size(); i-- > 0;) {
        if (w[i] == '0') {
            w[i] = '1';
            return w;
        }
        w[i] = '0';
    }
    return std::nullopt;
}

inline Word shortlex_successor(const Word& w) {
    if (auto nx = lex_increment(w)) return *nx;
    return Word(w.size() + 1, '0');
}

// Calls fn on every word of length exactly len in lex order.
template <typename F>
void for_each_word_of_length(size_t len, F&& fn) {
    if (len > 26) throw std::invalid_argument("for_each_word_of_length: universe too large");
    Word w(len, '0');
    while (true) {
        fn(static_cast<const Word&>(w));
        auto nx = lex_increment(w);
        if (!nx) break;
        w = std::move(*nx);
    }
}

// Calls fn on every word of length <= maxlen in shortlex order.
template <typename F>
void for_each_word_upto(size_t maxlen, F&& fn) {
    for (size_t len = 0; len <= maxlen; ++len) for_each_word_of_length(len, fn);
}

inline std::vector<Word> words_of_length(size_t len) {
    std::vector<Word> out;
    out.reserve(len <= 20 ? (size_t{1} << len) : 0);
    for_each_word_of_length(len, [&](const Word& w) { out.push_back(w); });
    return out;
}

inline std::vector<Word> words_upto(size_t maxlen) {
    std::vector<Word> out;
    for_each_word_upto(maxlen, [&](const Word& w) { out.push_back(w); });
    return out;
}

}  // namespace porder

#endif
