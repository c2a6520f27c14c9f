#pragma once

namespace fitroom {

/// Minutes since the store opened.
using SimTime = double;

inline constexpr SimTime kMinutesPerHour = 60.0;
inline constexpr int kOpeningHours = 8;
inline constexpr SimTime kBusinessDay = kMinutesPerHour * kOpeningHours;  // 480

}  // namespace fitroom
