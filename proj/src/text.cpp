#include "text.hpp"

#include <cctype>

namespace descqa {

static bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

std::string collapse_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_space = true;  // drops leading whitespace
  for (char c : s) {
    if (is_space(c)) {
      in_space = true;
    } else {
      if (in_space && !out.empty()) out.push_back(' ');
      in_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) tokens.emplace_back(s.substr(start, i - start));
  }
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

size_t count_words(std::string_view s) { return tokenize(s).size(); }

bool ends_sentence(std::string_view token) {
  if (token.empty()) return false;
  char c = token.back();
  return c == '.' || c == '!' || c == '?';
}

std::vector<std::vector<std::string>> split_sentences(
    const std::vector<std::string>& tokens) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  for (const auto& tok : tokens) {
    current.push_back(tok);
    if (ends_sentence(tok)) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

bool starts_with_tokens(const std::vector<std::string>& tokens,
                        const std::vector<std::string>& prefix) {
  if (prefix.size() > tokens.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (lower(tokens[i]) != lower(prefix[i])) return false;
  }
  return true;
}

}  // namespace descqa
