#pragma once

namespace krignet {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kManifestFormat = 1;

}  // namespace krignet
