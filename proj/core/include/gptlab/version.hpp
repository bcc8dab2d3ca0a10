#pragma once

namespace gptlab {

#ifdef GPTLAB_VERSION_STRING
inline constexpr const char* kVersion = GPTLAB_VERSION_STRING;
#else
inline constexpr const char* kVersion = "0.0.0";
#endif

}  // namespace gptlab
