#ifndef VROPT_VERSION_HPP
#define VROPT_VERSION_HPP

#define VROPT_VERSION_MAJOR 0
#define VROPT_VERSION_MINOR 1
#define VROPT_VERSION_PATCH 0

namespace vropt {

inline const char* version_string() { return "0.1.0"; }

}  // namespace vropt

#endif
