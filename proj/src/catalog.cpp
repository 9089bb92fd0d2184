#include <mutex>

#include "dialg/errors.hpp"
#include "dialg/workbench.hpp"

namespace dialg {

namespace detail {
extern const char* const kCatalogText;
} // namespace detail

namespace {

std::string strip_prefix(const std::string& name) {
    const std::string prefix = "builtin:";
    return name.starts_with(prefix) ? name.substr(prefix.size()) : name;
}

} // namespace

const WorkbenchInput& builtin_catalog() {
    static const WorkbenchInput catalog = parse_input(detail::kCatalogText);
    return catalog;
}

const VarietyPresentation& builtin_variety(const std::string& name) {
    if (auto v = builtin_catalog().find_variety(strip_prefix(name))) return *v;
    throw ArgumentError("no built-in variety " + name);
}

const MorphismDef& builtin_morphism(const std::string& name) {
    if (auto m = builtin_catalog().find_morphism(strip_prefix(name))) return *m;
    throw ArgumentError("no built-in morphism " + name);
}

} // namespace dialg
