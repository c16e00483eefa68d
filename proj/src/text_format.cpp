#include "cg/text_format.hpp"

#include <fstream>
#include <sstream>

#include "detail/lines.hpp"

namespace cg {

ParseError::ParseError(int l, int c, const std::string& msg)
    : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

EventStructure parse_es(const std::string& text) {
    auto lines = detail::tokenize(text);
    std::string name;
    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    std::vector<int> levels;
    std::vector<std::pair<std::string, std::string>> covers;
    std::vector<std::vector<std::string>> conflicts;
    std::vector<detail::Line> conflict_lines;
    bool header = false;
    for (const auto& ln : lines) {
        const auto& t = ln.tokens;
        const std::string& kw = t[0].text;
        if (!header) {
            if (kw != "es" || t.size() != 2) throw ln.error(0, "expected 'es <name>'");
            name = t[1].text;
            header = true;
            continue;
        }
        if (kw == "event") {
            if (t.size() < 3 || t.size() > 4) throw ln.error(0, "expected 'event <id> <+|-|0> [level=<k>]'");
            ids.push_back(t[1].text);
            const std::string& p = t[2].text;
            if (p == "+") pol.push_back(Polarity::plus);
            else if (p == "-") pol.push_back(Polarity::minus);
            else if (p == "0") pol.push_back(Polarity::neutral);
            else throw ln.error(2, "polarity must be +, - or 0");
            int lv = -1;
            if (t.size() == 4) {
                const std::string& a = t[3].text;
                if (a.rfind("level=", 0) != 0) throw ln.error(3, "expected level=<k>");
                lv = detail::to_int(ln, 3, a.substr(6));
                if (lv < 0) throw ln.error(3, "level must be non-negative");
            }
            levels.push_back(lv);
        } else if (kw == "cover") {
            if (t.size() != 3) throw ln.error(0, "expected 'cover <id> <id>'");
            covers.emplace_back(t[1].text, t[2].text);
        } else if (kw == "conflict") {
            if (t.size() < 2) throw ln.error(0, "expected 'conflict <id> ...'");
            std::vector<std::string> c;
            for (std::size_t i = 1; i < t.size(); ++i) c.push_back(t[i].text);
            conflicts.push_back(c);
            conflict_lines.push_back(ln);
        } else {
            throw ln.error(0, "unknown keyword '" + kw + "'");
        }
    }
    if (!header) throw ParseError(1, 1, "missing 'es <name>' header");
    bool any_level = false;
    for (int l : levels) any_level |= l >= 0;
    EventStructure shell;
    try {
        shell = make_es(name, ids, pol, {}, {}, any_level ? levels : std::vector<int>{});
    } catch (const CapExceeded&) {
        throw;
    } catch (const Error& err) {
        throw ParseError(1, 1, err.what());
    }
    std::vector<std::pair<int, int>> cv;
    for (const auto& ln : lines) {
        if (ln.tokens[0].text != "cover") continue;
        int a = shell.index(ln.tokens[1].text), b = shell.index(ln.tokens[2].text);
        if (a < 0) throw ln.error(1, "unknown event '" + ln.tokens[1].text + "'");
        if (b < 0) throw ln.error(2, "unknown event '" + ln.tokens[2].text + "'");
        cv.emplace_back(a, b);
    }
    std::vector<Mask> cf;
    for (const auto& ln : conflict_lines) {
        Mask m = 0;
        for (std::size_t i = 1; i < ln.tokens.size(); ++i) {
            int a = shell.index(ln.tokens[i].text);
            if (a < 0) throw ln.error(static_cast<int>(i), "unknown event '" + ln.tokens[i].text + "'");
            m |= bit(a);
        }
        cf.push_back(m);
    }
    return make_es(name, ids, pol, cv, cf, any_level ? levels : std::vector<int>{});
}

std::string write_es(const EventStructure& e) {
    std::string out = "es " + (e.name.empty() ? std::string("anon") : e.name) + "\n";
    for (int i = 0; i < e.size(); ++i) {
        out += "event " + e.id(i) + " " + polarity_char(e.pol(i));
        if (e.level(i) >= 0) out += " level=" + std::to_string(e.level(i));
        out += "\n";
    }
    for (auto [a, b] : e.covers()) out += "cover " + e.id(a) + " " + e.id(b) + "\n";
    for (Mask c : e.conflicts()) {
        out += "conflict";
        for_each_bit(c, [&](int a) { out += " " + e.id(a); });
        out += "\n";
    }
    return out;
}

}  // namespace cg
