#pragma once

// JSON complex format:
//
//   { "name": str,
//     "generators":   [{"id": str, "alexander": int, "maslov": int?}, ...],
//     "differential": [{"from": str, "to": str, "upower": int}, ...],
//     "flip":         [{"from": str, "to": str}, ...]? }
//
// to_json emits keys in this order with two-space indentation and a trailing
// newline, so its output round-trips byte for byte.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "knotcone/cfk.hpp"

namespace knotcone::cfk {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_json(const CfkComplex& c);
CfkComplex from_json(std::string_view text);

CfkComplex load_complex(const std::filesystem::path& path);
void save_complex(const CfkComplex& c, const std::filesystem::path& path);

}  // namespace knotcone::cfk
