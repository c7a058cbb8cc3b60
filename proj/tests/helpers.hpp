#pragma once

// Shared fixtures and small builders for the test suites.

#include <cstddef>
#include <string>
#include <vector>

#include "rpda/core.hpp"
#include "rpda/io.hpp"

namespace rpda::testing {

/// Value shorthand: `_` is bottom, anything else a named value.
inline DataValue val(const std::string& token) { return io::parse_value(token); }

/// Word shorthand over the textual format, e.g. word("a:d0 b:_").
inline Word word(const std::string& text) { return io::parse_word(text); }

/// Every word of length up to max_len over the given symbols and values,
/// shortest first; deterministic order.
inline std::vector<Word> all_words(const std::vector<std::string>& symbols,
                                   const std::vector<DataValue>& values, std::size_t max_len) {
    std::vector<Word> out{{}};
    std::size_t first_of_len = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = first_of_len; i < end; ++i)
            for (const std::string& s : symbols)
                for (const DataValue& v : values) {
                    Word w = out[i];
                    w.push_back(Letter{s, v});
                    out.push_back(std::move(w));
                }
        first_of_len = end;
    }
    return out;
}

/// Applies a value renaming to a word (values not in the map are kept).
inline Word rename_word(const Word& w, const std::vector<std::pair<DataValue, DataValue>>& map) {
    Word out = w;
    for (Letter& letter : out)
        for (const auto& [from, to] : map)
            if (letter.value == from) {
                letter.value = to;
                break;
            }
    return out;
}

}  // namespace rpda::testing
