#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kiselman::text {

// Splits on whitespace and commas and parses each token as a non-negative
// integer. The empty string (or one made only of separators) yields {}.
// Throws MalformedInput on anything else.
std::vector<std::uint64_t> parse_integers(std::string_view text);

// Comma/whitespace separated floating point values ("0.2,0.3,0.5").
std::vector<double> parse_doubles(std::string_view text);

}  // namespace kiselman::text
