#ifndef RENEWT_PARSE_HPP
#define RENEWT_PARSE_HPP

#include <string>

#include "renewt/poly.hpp"

namespace renewt {

// Complex literal grammar (no spaces):
//   complex = real | imag | real ("+" | "-") unsigned-imag
//   real    = ["+" | "-"] number
//   imag    = ["+" | "-"] number "i"
// Examples: "1.5", "-2i", "0.5+0.7853981634i", "1-0.25i".
Complex parse_complex(const std::string& text);

/// "c0,c1,..." ascending-degree complex coefficients.
Polynomial parse_coeffs(const std::string& text);

/// "(root^mult,root^mult,...);leading" -- the ";leading" part defaults to 1.
FactoredPolynomial parse_factored(const std::string& text);

/// Class generators: "two_root:k,m", "unicritical:n", "composite:m,n".
FactoredPolynomial parse_class(const std::string& text);

} // namespace renewt

#endif
