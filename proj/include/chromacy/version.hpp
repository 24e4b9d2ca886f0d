#pragma once

namespace chromacy {

// Tool version tag embedded in certificates. Bump on any change that affects
// search order, RNG streams, or serialized formats: certificates are only
// reproducible against the version that wrote them.
inline constexpr const char* kVersion = "chromacy/1.0.0";

inline constexpr const char* kArrayFormat = "chromacy-array/1";
inline constexpr const char* kCertFormat = "chromacy-cert/1";
inline constexpr const char* kPointsFormat = "chromacy-points/1";
inline constexpr const char* kVectorsFormat = "chromacy-vectors/1";

} // namespace chromacy
