#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vdm/errors.hpp"

namespace vdm::cli {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_atom(std::string_view tok) {
  tok = trim(tok);
  bool negative = false;
  if (!tok.empty() && (tok.front() == '-' || tok.front() == '+')) {
    negative = tok.front() == '-';
    tok.remove_prefix(1);
  }
  if (tok == "e") return negative ? -std::numbers::e : std::numbers::e;
  const std::string s(tok);
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty number");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "not a number: " + s);
  }
  if (used != s.size() || !std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "not a number: " + s);
  return negative ? -v : v;
}

}  // namespace detail

/// Parses a decimal, the literal `e`, or a fraction `p/q` of those.
inline double parse_scalar(std::string_view tok) {
  tok = detail::trim(tok);
  const auto slash = tok.find('/');
  if (slash == std::string_view::npos) return detail::parse_atom(tok);
  const double den = detail::parse_atom(tok.substr(slash + 1));
  if (den == 0.0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  return detail::parse_atom(tok.substr(0, slash)) / den;
}

/// Comma-separated list of scalars, e.g. "1,e,1/3".
inline std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_scalar(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Resolution {
  std::size_t theta_count = 0;
  std::size_t phi_count = 0;
};

/// "720x360" -> theta 720, phi 360.
inline Resolution parse_resolution(std::string_view text) {
  const auto x = text.find('x');
  if (x == std::string_view::npos) throw Error(ErrorCode::InvalidArgument, "resolution must look like 720x360");
  auto count = [](std::string_view part) {
    const std::string s(detail::trim(part));
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad resolution component: " + s);
    }
    if (used != s.size() || s.empty() || s.front() == '-') {
      throw Error(ErrorCode::InvalidArgument, "bad resolution component: " + s);
    }
    return static_cast<std::size_t>(v);
  };
  return {count(text.substr(0, x)), count(text.substr(x + 1))};
}

}  // namespace vdm::cli
