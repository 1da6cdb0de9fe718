#pragma once

#include <string>

#include "avmod/poly.hpp"

namespace avmod::test {

inline Poly P(const std::string& text, std::size_t dim) { return parse_poly(text, dim); }
inline Derivation D(const std::string& text, std::size_t dim) { return parse_derivation(text, dim); }

}  // namespace avmod::test
