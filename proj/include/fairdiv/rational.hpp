#pragma once

#include <boost/rational.hpp>

#include <concepts>
#include <string>
#include <string_view>

namespace boost {

// boost 1.74's heterogeneous rational/integer operator== calls itself under
// C++20 reversed-operator rewriting (stack overflow at runtime). These deleted
// overloads outrank it, so any mixed ==/!= fails to compile; compare against
// an explicit Rat instead, e.g. r == Rat(0).
template <std::integral T> bool operator==(const rational<long long>&, T) = delete;
template <std::integral T> bool operator==(T, const rational<long long>&) = delete;

} // namespace boost

namespace fairdiv {

// Exact rational arithmetic. Every quantity in this library (values,
// subsidies, utilities, envy weights) is a Rat; no floating point anywhere.
using Rat = boost::rational<long long>;

inline bool rat_is_int(const Rat& r) { return r.denominator() == 1; }

// Canonical text form: "3", "-1/2", "19/2". Reduced, denominator positive.
std::string rat_str(const Rat& r);

// Parses "p", "-p", "p/q" (optionally signed numerator). Throws
// std::invalid_argument on anything else, including division by zero.
Rat rat_parse(std::string_view text);

} // namespace fairdiv
