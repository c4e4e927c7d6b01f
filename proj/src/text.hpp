#ifndef DESCQA_TEXT_HPP
#define DESCQA_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace descqa {

std::string trim(std::string_view s);

// ASCII case folding only; multi-byte UTF-8 passes through untouched.
std::string lower(std::string_view s);

// trim + collapse internal whitespace runs to single spaces.
std::string collapse_spaces(std::string_view s);

// Whitespace tokenization after trimming; punctuation stays attached.
std::vector<std::string> tokenize(std::string_view s);

std::string join_tokens(const std::vector<std::string>& tokens);

size_t count_words(std::string_view s);

// True when the token ends with terminal punctuation (./!/?).
bool ends_sentence(std::string_view token);

// Sentence boundary after any token with terminal punctuation; a trailing
// run without one forms the last sentence.
std::vector<std::vector<std::string>> split_sentences(
    const std::vector<std::string>& tokens);

// Case-insensitive: do the leading tokens of `tokens` equal `prefix`?
bool starts_with_tokens(const std::vector<std::string>& tokens,
                        const std::vector<std::string>& prefix);

}  // namespace descqa

#endif
