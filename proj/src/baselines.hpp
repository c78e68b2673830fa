#pragma once

#include <optional>
#include <string_view>

namespace dyadic_ns {

/// Relative drift allowed between a measured constant and its frozen value.
inline constexpr double kBaselineRelTol = 1e-6;

/// Frozen value of `key` for `suite` at the suite's reference configuration.
std::optional<double> frozen_baseline(std::string_view suite, std::string_view key);

}  // namespace dyadic_ns
