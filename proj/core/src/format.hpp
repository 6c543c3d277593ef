#pragma once

// Internal number formatting shared by the serializers and the CLI.

#include <charconv>
#include <complex>
#include <string>

namespace rectinv::detail {

// Shortest representation that parses back to the same double.
inline std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// "a+bi" / "a-bi", no spaces.
inline std::string complex_literal(std::complex<double> z) {
  std::string out = shortest(z.real());
  if (std::signbit(z.imag())) {
    out += "-" + shortest(-z.imag());
  } else {
    out += "+" + shortest(z.imag());
  }
  return out + "i";
}

}  // namespace rectinv::detail
