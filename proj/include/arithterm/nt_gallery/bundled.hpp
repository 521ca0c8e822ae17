#pragma once

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "../counting_compiler/spec_io.hpp"

#ifndef ARITHTERM_SPEC_DIR
#define ARITHTERM_SPEC_DIR "data/specs"
#endif

namespace arithterm {

inline const std::vector<std::string>& bundled_spec_names() {
    static const std::vector<std::string> names{"tau", "sigma", "phi", "inv", "sqrt", "log", "ord", "dlog", "root2", "root3"};
    return names;
}

namespace detail {

inline std::string& spec_dir_override() {
    static std::string dir;
    return dir;
}

}  // namespace detail

// Flag beats environment beats the build-time default.
inline void set_spec_dir(const std::string& dir) { detail::spec_dir_override() = dir; }

inline std::string spec_dir() {
    if (!detail::spec_dir_override().empty()) return detail::spec_dir_override();
    if (const char* env = std::getenv("ARITHTERM_SPEC_DIR"); env && *env) return env;
    return ARITHTERM_SPEC_DIR;
}

inline std::string bundled_spec_path(const std::string& name) { return spec_dir() + "/" + name + ".json"; }

inline const CountingSpec& bundled_spec(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, CountingSpec> cache;
    std::lock_guard<std::mutex> lock(mu);
    std::string path = bundled_spec_path(name);
    auto it = cache.find(path);
    if (it != cache.end()) return it->second;
    return cache.emplace(path, load_spec(path)).first->second;
}

}  // namespace arithterm
