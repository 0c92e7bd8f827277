#ifndef LRC_VERSION_HPP
#define LRC_VERSION_HPP

namespace lrc {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
