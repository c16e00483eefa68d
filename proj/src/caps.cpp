#include <cstdlib>
#include <sstream>

#include "cg/errors.hpp"

namespace cg {

Caps parse_caps(const std::string& spec, Caps base) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("bad cap setting '" + item + "'");
        std::string key = item.substr(0, eq);
        int value = 0;
        try {
            value = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("bad cap value in '" + item + "'");
        }
        if (key == "events") base.events = value;
        else if (key == "iso") base.iso = value;
        else if (key == "fspace") base.fspace = value;
        else throw Error("unknown cap '" + key + "'");
    }
    return base;
}

namespace {

Caps& current() {
    static Caps caps = [] {
        const char* env = std::getenv("CG_CAPS");
        return env ? parse_caps(env, Caps{}) : Caps{};
    }();
    return caps;
}

}  // namespace

const Caps& default_caps() { return current(); }

void set_default_caps(const Caps& caps) { current() = caps; }

}  // namespace cg
