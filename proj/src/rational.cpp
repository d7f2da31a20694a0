#include "fairdiv/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace fairdiv {

std::string rat_str(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) {
        s += "/";
        s += std::to_string(r.denominator());
    }
    return s;
}

namespace {

long long parse_ll(std::string_view text) {
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("bad rational literal: '" + std::string(text) + "'");
    return value;
}

} // namespace

Rat rat_parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("bad rational literal: empty string");
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_ll(text));
    long long num = parse_ll(text.substr(0, slash));
    long long den = parse_ll(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("bad rational literal: zero denominator");
    return Rat(num, den);
}

} // namespace fairdiv
