#ifndef CASCADE_VERSION_HPP
#define CASCADE_VERSION_HPP

namespace cascade {

inline constexpr const char* version_string = "cascade-eit 1.0.0";

} // namespace cascade

#endif
