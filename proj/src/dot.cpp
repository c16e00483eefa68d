#include "cg/dot.hpp"

#include <map>

namespace cg {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

const char* shape(Polarity p) {
    switch (p) {
        case Polarity::plus: return "box";
        case Polarity::minus: return "diamond";
        default: return "circle";
    }
}

std::string graph(const EventStructure& e, const std::string& name,
                  const std::vector<std::string>& labels) {
    std::string out = "digraph " + quote(name) + " {\n  rankdir=BT;\n";
    auto node = [&](int k, const std::string& indent) {
        return indent + quote(e.id(k)) + " [shape=" + shape(e.pol(k)) + ", label=" + quote(labels[k]) + "];\n";
    };
    if (e.has_levels()) {
        std::map<int, std::vector<int>> by_level;
        for (int k = 0; k < e.size(); ++k) by_level[e.level(k)].push_back(k);
        for (const auto& [lv, ks] : by_level) {
            out += "  subgraph " + quote("cluster_" + std::to_string(lv)) + " {\n    label=" +
                   quote("level " + std::to_string(lv)) + ";\n";
            for (int k : ks) out += node(k, "    ");
            out += "  }\n";
        }
    } else {
        for (int k = 0; k < e.size(); ++k) out += node(k, "  ");
    }
    for (auto [a, b] : e.covers()) out += "  " + quote(e.id(a)) + " -> " + quote(e.id(b)) + ";\n";
    for (Mask c : e.conflicts()) {
        std::vector<int> ks;
        for_each_bit(c, [&](int k) { ks.push_back(k); });
        for (std::size_t i = 0; i < ks.size(); ++i)
            for (std::size_t j = i + 1; j < ks.size(); ++j)
                out += "  " + quote(e.id(ks[i])) + " -> " + quote(e.id(ks[j])) +
                       " [style=dashed, dir=none, constraint=false];\n";
    }
    return out + "}\n";
}

}  // namespace

std::string es_to_dot(const EventStructure& e) {
    std::vector<std::string> labels;
    for (int k = 0; k < e.size(); ++k) labels.push_back(e.id(k) + polarity_char(e.pol(k)));
    return graph(e, e.name.empty() ? "es" : e.name, labels);
}

std::string strategy_to_dot(const Strategy& s) {
    std::vector<std::string> labels;
    for (int k = 0; k < s.carrier.size(); ++k)
        labels.push_back(s.carrier.id(k) + polarity_char(s.carrier.pol(k)) + " : " + s.game.id(s.label[k]));
    return graph(s.carrier, s.name.empty() ? "strategy" : s.name, labels);
}

}  // namespace cg
