#pragma once

#include <string>
#include <vector>

#include "cg/text_format.hpp"

namespace cg::detail {

struct Token {
    std::string text;
    int column;
};

struct Line {
    int number;
    std::vector<Token> tokens;

    ParseError error(int tok, const std::string& msg) const {
        int col = tok < static_cast<int>(tokens.size()) ? tokens[tok].column : 1;
        return ParseError(number, col, msg);
    }
};

// Splits on whitespace, drops '#' comments and blank lines.
inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string raw = text.substr(pos, end - pos);
        ++number;
        Line ln{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] == '#') break;
            if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
            ln.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
        }
        if (!ln.tokens.empty()) out.push_back(std::move(ln));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

inline int to_int(const Line& ln, int tok, const std::string& s) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw ln.error(tok, "bad integer '" + s + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ln.error(tok, "bad integer '" + s + "'");
    }
}

}  // namespace cg::detail
