#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdvp/constellation.hpp"
#include "bdvp/perturbation.hpp"
#include "bdvp/precoder.hpp"

namespace bdvp {

/// Shortest decimal string that parses back to exactly the same double;
/// always uses '.' regardless of locale.
std::string format_double(double value);

/// FNV-1a 64-bit hash, used for per-record checksums in output files.
std::uint64_t fnv1a(const std::string& text);

std::string modulation_name(Modulation m);
std::string criterion_name(Criterion c);
std::string encoder_name(Encoder e);

Modulation modulation_from_name(const std::string& name);
Criterion criterion_from_name(const std::string& name);
Encoder encoder_from_name(const std::string& name);

/// Splits on commas, trims surrounding spaces, drops nothing: "1, 2" ->
/// {"1", "2"}; an empty input yields an empty list.
std::vector<std::string> split_list(const std::string& text);

}  // namespace bdvp
