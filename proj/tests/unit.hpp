#pragma once

// doctest with printers for the inet types. Stringification is qualified so
// that inet::toString (found by argument lookup) does not hijack it.

#define DOCTEST_STRINGIFY(...) ::doctest::toString(__VA_ARGS__)
#include <doctest.h>

#include "inet/core.hpp"

namespace doctest {

template <>
struct StringMaker<inet::Position> {
  static String convert(const inet::Position& p) { return inet::toString(p).c_str(); }
};
template <>
struct StringMaker<inet::RulePattern> {
  static String convert(const inet::RulePattern& p) { return inet::toString(p).c_str(); }
};
template <>
struct StringMaker<inet::Net> {
  static String convert(const inet::Net& n) { return inet::toString(n).c_str(); }
};
template <>
struct StringMaker<inet::Term> {
  static String convert(const inet::Term& t) { return inet::toString(t).c_str(); }
};

}  // namespace doctest
