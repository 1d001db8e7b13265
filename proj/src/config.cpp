#include "nvpulse/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace nvpulse {

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
}

std::string config_hash(const nlohmann::json& j) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json constants_table(const Register& reg) {
    nlohmann::json t = register_to_json(reg);
    t["hbar"] = 1.0;
    t["internal_units"] = {{"frequency", "rad/s"}, {"time", "s"}, {"field", "T"}};
    return t;
}

}  // namespace nvpulse
