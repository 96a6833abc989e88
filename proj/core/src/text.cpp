#include "kiselman/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "kiselman/errors.hpp"

namespace kiselman::text {

namespace {

bool is_separator(char c) {
  return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

template <typename F>
void for_each_token(std::string_view text, F&& f) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_separator(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_separator(text[j])) ++j;
    if (j > i) f(text.substr(i, j - i));
    i = j;
  }
}

}  // namespace

std::vector<std::uint64_t> parse_integers(std::string_view text) {
  std::vector<std::uint64_t> out;
  for_each_token(text, [&](std::string_view tok) {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size()) {
      throw MalformedInput("not a non-negative integer: '" + std::string(tok) +
                           "'");
    }
    out.push_back(v);
  });
  return out;
}

std::vector<double> parse_doubles(std::string_view text) {
  std::vector<double> out;
  for_each_token(text, [&](std::string_view tok) {
    // from_chars for double is not available on every libstdc++ we target.
    std::string s(tok);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw MalformedInput("not a number: '" + s + "'");
    }
    out.push_back(v);
  });
  return out;
}

}  // namespace kiselman::text
