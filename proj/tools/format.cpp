#include "format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace polyfock::cli {

namespace {

std::optional<double> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

// Coefficient of i: "", "+", "-" stand for 1, 1, -1.
std::optional<double> parse_imaginary(std::string_view text) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text);
}

}  // namespace

std::optional<std::complex<double>> parse_complex(std::string_view text) {
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) return std::nullopt;
  }
  if (text.back() != 'i') {
    const auto re = parse_real(text);
    if (!re) return std::nullopt;
    return std::complex<double>(*re, 0.0);
  }
  text.remove_suffix(1);
  // split at the last sign that is not a leading sign or an exponent sign
  std::size_t split = std::string_view::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    const auto im = parse_imaginary(text);
    if (!im) return std::nullopt;
    return std::complex<double>(0.0, *im);
  }
  const auto re = parse_real(text.substr(0, split));
  const auto im = parse_imaginary(text.substr(split));
  if (!re || !im) return std::nullopt;
  return std::complex<double>(*re, *im);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string format_complex(std::complex<double> z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  out += (std::signbit(im) ? "-" : "+");
  out += format_double(std::abs(im));
  out += 'i';
  return out;
}

}  // namespace polyfock::cli
