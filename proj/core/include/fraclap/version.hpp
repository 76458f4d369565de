#ifndef FRACLAP_VERSION_HPP
#define FRACLAP_VERSION_HPP

namespace fraclap {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
