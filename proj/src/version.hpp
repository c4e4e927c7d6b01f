#ifndef DESCQA_VERSION_HPP
#define DESCQA_VERSION_HPP

namespace descqa {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace descqa

#endif
