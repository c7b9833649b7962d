#ifndef POLYFOCK_TOOLS_FORMAT_HPP
#define POLYFOCK_TOOLS_FORMAT_HPP

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace polyfock::cli {

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" (no spaces).
std::optional<std::complex<double>> parse_complex(std::string_view text);

/// printf("%.17g").
std::string format_double(double x);

/// "a+bi" / "a-bi" with 17 significant digits.
std::string format_complex(std::complex<double> z);

}  // namespace polyfock::cli

#endif  // POLYFOCK_TOOLS_FORMAT_HPP
