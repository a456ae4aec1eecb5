#ifndef CHEAPTALK_VERSION_HPP
#define CHEAPTALK_VERSION_HPP

namespace cheaptalk {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cheaptalk

#endif
