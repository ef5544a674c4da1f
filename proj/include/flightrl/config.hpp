#pragma once

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "rng.hpp"

namespace flightrl {

using Json = nlohmann::json;

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("failed to parse " + path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

/// Fingerprint of a config document, carried into every output artifact.
inline std::string config_hash(const Json& j) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(j.dump())));
    return buf;
}

/// Strict field reader: tracks which keys were consumed so done() can
/// reject documents carrying unknown keys.
class StrictObject {
public:
    StrictObject(const Json& j, std::string context) : j_(j), context_(std::move(context)) {
        if (!j.is_object()) throw std::runtime_error(context_ + ": expected an object");
    }

    /// Call after all expected fields were read; rejects anything left over
    /// so typos in config files fail loudly instead of keeping defaults.
    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key()))
                throw std::runtime_error(context_ + ": unknown key '" + it.key() + "'");
        }
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    template <typename T>
    void get(const std::string& key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) throw std::runtime_error(context_ + ": missing key '" + key + "'");
        out = j_.at(key).get<T>();
    }

    template <typename T>
    void get_optional(const std::string& key, T& out) {
        seen_.insert(key);
        if (j_.contains(key)) out = j_.at(key).get<T>();
    }

    const Json& child(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw std::runtime_error(context_ + ": missing key '" + key + "'");
        return j_.at(key);
    }

    /// Optional child object; returns nullptr when absent.
    const Json* child_optional(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

private:
    const Json& j_;
    std::string context_;
    std::set<std::string> seen_;
};

inline void require_schema_version(StrictObject& obj, int expected) {
    int v = -1;
    obj.get("schema_version", v);
    if (v != expected)
        throw std::runtime_error("unsupported schema_version " + std::to_string(v) +
                                 " (expected " + std::to_string(expected) + ")");
}

}  // namespace flightrl
