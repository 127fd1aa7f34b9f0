#ifndef ALIENTO_BUILTIN_RESOURCES_HPP
#define ALIENTO_BUILTIN_RESOURCES_HPP

#include <string_view>
#include <vector>

namespace aliento::builtin {

/// Contents of a shipped resources/ file, embedded at build time.
/// Empty view when the name is unknown.
std::string_view resource(std::string_view name);

/// Names of all embedded files, sorted.
std::vector<std::string_view> resource_names();

} // namespace aliento::builtin

#endif
