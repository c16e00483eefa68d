#include "cg/formats.hpp"

#include <algorithm>
#include <filesystem>

#include "detail/lines.hpp"

namespace cg {

namespace fs = std::filesystem;
using detail::Line;

namespace {

const Line& header(const std::vector<Line>& lines, const std::string& kw, std::size_t min_tokens,
                   std::size_t max_tokens, const std::string& usage) {
    if (lines.empty()) throw ParseError(1, 1, "empty file, expected '" + usage + "'");
    const auto& h = lines.front();
    if (h.tokens[0].text != kw || h.tokens.size() < min_tokens || h.tokens.size() > max_tokens)
        throw h.error(0, "expected '" + usage + "'");
    return h;
}

Mask ids_to_mask(const Line& ln, std::size_t from, std::size_t to, const EventStructure& e) {
    Mask m = 0;
    for (std::size_t i = from; i < to; ++i) {
        int k = e.index(ln.tokens[i].text);
        if (k < 0) throw ln.error(static_cast<int>(i), "unknown event '" + ln.tokens[i].text + "' of " + e.name);
        m |= bit(k);
    }
    return m;
}

std::string mask_to_ids(Mask m, const EventStructure& e) {
    std::string out;
    for_each_bit(m, [&](int k) { out += " " + e.id(k); });
    return out;
}

// positions of the given separator tokens, in order; throws when any is missing
std::vector<std::size_t> split_at(const Line& ln, const std::vector<std::string>& seps, std::size_t from) {
    std::vector<std::size_t> at;
    std::size_t k = 0;
    for (std::size_t i = from; i < ln.tokens.size() && k < seps.size(); ++i)
        if (ln.tokens[i].text == seps[k]) {
            at.push_back(i);
            ++k;
        }
    if (at.size() != seps.size()) {
        std::string want;
        for (const auto& s : seps) want += " '" + s + "'";
        throw ln.error(0, "expected separators" + want);
    }
    return at;
}

EventStructure resolve_at(const Resolver& resolve, const Line& ln, int tok) {
    try {
        return resolve(ln.tokens[tok].text);
    } catch (const ParseError& e) {
        throw ParseError(ln.number, ln.tokens[tok].column, ln.tokens[tok].text + ": " + e.what());
    } catch (const CapExceeded&) {
        throw;
    } catch (const Error& e) {
        throw ln.error(tok, e.what());
    }
}

std::string ref_name(const std::string& path, const std::string& role) {
    return fs::path(stem_of(path) + "." + role + ".es").filename().string();
}

std::string sibling(const std::string& path, const std::string& name) {
    return (fs::path(dir_of(path)) / name).string();
}

template <class L>
L parse_lens_like(const std::string& text, const Resolver& resolve, const std::string& kw) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, kw, 4, 4, kw + " <name> <source> <target>");
    L l;
    l.a = resolve_at(resolve, h, 2);
    l.b = resolve_at(resolve, h, 3);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        const auto& k = ln.tokens[0].text;
        if (k == "fwd") {
            auto at = split_at(ln, {"->"}, 1);
            Mask x = ids_to_mask(ln, 1, at[0], l.a);
            if (!l.fwd.emplace(x, ids_to_mask(ln, at[0] + 1, ln.tokens.size(), l.b)).second)
                throw ln.error(0, "duplicate fwd entry");
        } else if (k == "bwd") {
            auto at = split_at(ln, {"|", "->"}, 1);
            Mask x = ids_to_mask(ln, 1, at[0], l.a);
            Mask y = ids_to_mask(ln, at[0] + 1, at[1], l.b);
            if (!l.bwd.emplace(std::make_pair(x, y), ids_to_mask(ln, at[1] + 1, ln.tokens.size(), l.a)).second)
                throw ln.error(0, "duplicate bwd entry");
        } else {
            throw ln.error(0, "unknown keyword '" + k + "'");
        }
    }
    return l;
}

template <class L>
std::string write_lens_like(const L& l, const std::string& kw, const std::string& sref, const std::string& tref) {
    std::string out = kw + " " + l.a.name + "_" + l.b.name + " " + sref + " " + tref + "\n";
    for (auto [x, y] : l.fwd) out += "fwd" + mask_to_ids(x, l.a) + " ->" + mask_to_ids(y, l.b) + "\n";
    for (auto& [k, v] : l.bwd)
        out += "bwd" + mask_to_ids(k.first, l.a) + " |" + mask_to_ids(k.second, l.b) + " ->" + mask_to_ids(v, l.a) +
               "\n";
    return out;
}

void save_pair(const std::string& path, const EventStructure& a, const EventStructure& b,
               const std::function<std::string(const std::string&, const std::string&)>& body) {
    auto sa = ref_name(path, "source"), sb = ref_name(path, "target");
    save_es(a, sibling(path, sa));
    save_es(b, sibling(path, sb));
    write_file(path, body(sa, sb));
}

}  // namespace

Resolver directory_resolver(const std::string& dir) {
    return [dir](const std::string& ref) { return load_es((fs::path(dir) / ref).string()); };
}

std::string file_kind(const std::string& text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "empty file");
    return lines.front().tokens[0].text;
}

StableFamily parse_family(const std::string& text) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, "family", 2, 2, "family <name>");
    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    std::map<std::string, int> index;
    auto id_of = [&](const Line& ln, int tok) {
        const auto& s = ln.tokens[tok].text;
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        index[s] = static_cast<int>(ids.size());
        ids.push_back(s);
        pol.push_back(Polarity::plus);
        if (ids.size() > static_cast<std::size_t>(max_events)) throw CapExceeded("family has more than 64 elements");
        return static_cast<int>(ids.size()) - 1;
    };
    std::vector<Mask> configs;
    std::vector<int> levels;
    bool has_levels = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        const auto& k = ln.tokens[0].text;
        if (k == "event") {
            if (ln.tokens.size() != 3 && ln.tokens.size() != 4)
                throw ln.error(0, "expected 'event <id> <+|-|0> [level]'");
            if (index.count(ln.tokens[1].text)) throw ln.error(1, "event declared after use or twice");
            int e = id_of(ln, 1);
            const auto& p = ln.tokens[2].text;
            if (p == "+") pol[e] = Polarity::plus;
            else if (p == "-") pol[e] = Polarity::minus;
            else if (p == "0") pol[e] = Polarity::neutral;
            else throw ln.error(2, "polarity must be +, - or 0");
            if (ln.tokens.size() == 4) {
                levels.resize(ids.size(), 0);
                levels[e] = detail::to_int(ln, 3, ln.tokens[3].text);
                has_levels = true;
            }
        } else if (k == "config") {
            Mask m = 0;
            for (std::size_t t = 1; t < ln.tokens.size(); ++t) m |= bit(id_of(ln, static_cast<int>(t)));
            configs.push_back(m);
        } else {
            throw ln.error(0, "unknown keyword '" + k + "'");
        }
    }
    if (has_levels) levels.resize(ids.size(), 0);
    return make_family(h.tokens[1].text, ids, configs, pol, levels);
}

std::string write_family(const StableFamily& f) {
    std::string out = "family " + (f.name.empty() ? std::string("anon") : f.name) + "\n";
    for (int e = 0; e < f.size(); ++e) {
        out += "event " + f.ids[e] + " " + polarity_char(f.pol[e]);
        if (std::any_of(f.levels.begin(), f.levels.end(), [](int k) { return k >= 0; }))
            out += " " + std::to_string(f.levels[e]);
        out += "\n";
    }
    for (Mask x : f.configs) {
        out += "config";
        for_each_bit(x, [&](int e) { out += " " + f.ids[e]; });
        out += "\n";
    }
    return out;
}

Strategy parse_strategy(const std::string& text, const Resolver& resolve) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, "strategy", 2, 2, "strategy <name>");
    std::optional<EventStructure> carrier, game, source, target;
    std::vector<const Line*> labels;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        const auto& k = ln.tokens[0].text;
        auto one = [&](std::optional<EventStructure>& slot) {
            if (ln.tokens.size() != 2) throw ln.error(0, "expected '" + k + " <es file>'");
            if (slot) throw ln.error(0, "'" + k + "' given twice");
            slot = resolve_at(resolve, ln, 1);
        };
        if (k == "carrier") one(carrier);
        else if (k == "game") one(game);
        else if (k == "source") one(source);
        else if (k == "target") one(target);
        else if (k == "label") {
            if (ln.tokens.size() != 3) throw ln.error(0, "expected 'label <carrier-id> <game-id>'");
            labels.push_back(&ln);
        } else {
            throw ln.error(0, "unknown keyword '" + k + "'");
        }
    }
    if (!carrier) throw h.error(0, "missing 'carrier'");
    if (game && (source || target)) throw h.error(0, "give either 'game' or 'source'/'target'");
    if (!game && !(source && target)) throw h.error(0, "missing 'game' or 'source'/'target'");
    EventStructure g = game ? *game : arrow_game(*source, *target);
    std::vector<int> label(carrier->size(), -1);
    for (const auto* ln : labels) {
        int c = carrier->index(ln->tokens[1].text);
        if (c < 0) throw ln->error(1, "unknown carrier event '" + ln->tokens[1].text + "'");
        int t = g.index(ln->tokens[2].text);
        if (t < 0) throw ln->error(2, "unknown game event '" + ln->tokens[2].text + "'");
        if (label[c] >= 0) throw ln->error(1, "carrier event labelled twice");
        label[c] = t;
    }
    for (int c = 0; c < carrier->size(); ++c)
        if (label[c] < 0) throw h.error(0, "carrier event '" + carrier->id(c) + "' has no label");
    const auto& name = h.tokens[1].text;
    return game ? make_strategy(name, *carrier, g, label) : make_arrow(name, *carrier, *source, *target, label);
}

std::string write_strategy(const Strategy& s, const StrategyRefs& refs) {
    std::string out = "strategy " + (s.name.empty() ? std::string("anon") : s.name) + "\n";
    out += "carrier " + refs.carrier + "\n";
    if (s.is_arrow()) {
        out += "source " + refs.source + "\n";
        out += "target " + refs.target + "\n";
    } else {
        out += "game " + refs.game + "\n";
    }
    for (int c = 0; c < s.carrier.size(); ++c) out += "label " + s.carrier.id(c) + " " + s.game.id(s.label[c]) + "\n";
    return out;
}

ConfigFunction parse_cfun(const std::string& text, const Resolver& resolve) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, "cfun", 4, 4, "cfun <name> <source> <target>");
    ConfigFunction f{h.tokens[1].text, resolve_at(resolve, h, 2), resolve_at(resolve, h, 3), {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        if (ln.tokens[0].text != "map") throw ln.error(0, "unknown keyword '" + ln.tokens[0].text + "'");
        auto at = split_at(ln, {"->"}, 1);
        Mask x = ids_to_mask(ln, 1, at[0], f.source);
        if (!f.table.emplace(x, ids_to_mask(ln, at[0] + 1, ln.tokens.size(), f.target)).second)
            throw ln.error(0, "configuration mapped twice");
    }
    return f;
}

std::string write_cfun(const ConfigFunction& f, const std::string& source_ref, const std::string& target_ref) {
    std::string out = "cfun " + (f.name.empty() ? std::string("anon") : f.name) + " " + source_ref + " " +
                      target_ref + "\n";
    for (Mask x : f.domain()) out += "map" + mask_to_ids(x, f.source) + " ->" + mask_to_ids(f(x), f.target) + "\n";
    return out;
}

WinningConditions parse_wins(const std::string& text, const Resolver& resolve) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, "wins", 2, 2, "wins <game>");
    auto g = resolve_at(resolve, h, 1);
    std::vector<Mask> ws;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        if (ln.tokens[0].text != "config") throw ln.error(0, "unknown keyword '" + ln.tokens[0].text + "'");
        ws.push_back(ids_to_mask(ln, 1, ln.tokens.size(), g));
    }
    return make_wins(g, ws);
}

std::string write_wins(const WinningConditions& w, const std::string& game_ref) {
    std::string out = "wins " + game_ref + "\n";
    for (Mask x : w.wins) out += "config" + mask_to_ids(x, w.game) + "\n";
    return out;
}

AccessOrder parse_levels(const std::string& text) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, "levels", 2, 2, "levels <name>");
    AccessOrder o{h.tokens[1].text, {}, {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        const auto& k = ln.tokens[0].text;
        if (k == "level") {
            if (ln.tokens.size() < 2) throw ln.error(0, "expected 'level <k>...'");
            for (std::size_t t = 1; t < ln.tokens.size(); ++t) {
                int v = detail::to_int(ln, static_cast<int>(t), ln.tokens[t].text);
                if (v < 0) throw ln.error(static_cast<int>(t), "level must be non-negative");
                if (o.contains(v)) throw ln.error(static_cast<int>(t), "level declared twice");
                o.levels.push_back(v);
            }
        } else if (k == "prec") {
            if (ln.tokens.size() != 3) throw ln.error(0, "expected 'prec <k> <k'>'");
            int a = detail::to_int(ln, 1, ln.tokens[1].text), b = detail::to_int(ln, 2, ln.tokens[2].text);
            if (!o.contains(a)) throw ln.error(1, "undeclared level");
            if (!o.contains(b)) throw ln.error(2, "undeclared level");
            o.prec.emplace_back(a, b);
        } else {
            throw ln.error(0, "unknown keyword '" + k + "'");
        }
    }
    return o;
}

std::string write_levels(const AccessOrder& o) {
    std::string out = "levels " + (o.name.empty() ? std::string("anon") : o.name) + "\n";
    if (!o.levels.empty()) {
        out += "level";
        for (int k : o.levels) out += " " + std::to_string(k);
        out += "\n";
    }
    for (auto [a, b] : o.prec) out += "prec " + std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

Lens parse_lens(const std::string& text, const Resolver& resolve) {
    return parse_lens_like<Lens>(text, resolve, "lens");
}

std::string write_lens(const Lens& l, const std::string& source_ref, const std::string& target_ref) {
    return write_lens_like(l, "lens", source_ref, target_ref);
}

DependentLens parse_dlens(const std::string& text, const Resolver& resolve) {
    return parse_lens_like<DependentLens>(text, resolve, "dlens");
}

std::string write_dlens(const DependentLens& l, const std::string& source_ref, const std::string& target_ref) {
    return write_lens_like(l, "dlens", source_ref, target_ref);
}

GoIPair parse_goi(const std::string& text, const Resolver& resolve) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, "goi", 4, 4, "goi <name> <source> <target>");
    GoIPair p{resolve_at(resolve, h, 2), resolve_at(resolve, h, 3), {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        if (ln.tokens[0].text != "map") throw ln.error(0, "unknown keyword '" + ln.tokens[0].text + "'");
        auto at = split_at(ln, {"|", "->", "|"}, 1);
        Mask x1 = ids_to_mask(ln, 1, at[0], p.a);
        Mask y2 = ids_to_mask(ln, at[0] + 1, at[1], p.b);
        Mask x2 = ids_to_mask(ln, at[1] + 1, at[2], p.a);
        Mask y1 = ids_to_mask(ln, at[2] + 1, ln.tokens.size(), p.b);
        if (!p.table.emplace(std::make_pair(x1, y2), std::make_pair(x2, y1)).second)
            throw ln.error(0, "duplicate entry");
    }
    return p;
}

std::string write_goi(const GoIPair& p, const std::string& source_ref, const std::string& target_ref) {
    std::string out = "goi " + p.a.name + "_" + p.b.name + " " + source_ref + " " + target_ref + "\n";
    for (auto& [k, v] : p.table)
        out += "map" + mask_to_ids(k.first, p.a) + " |" + mask_to_ids(k.second, p.b) + " ->" +
               mask_to_ids(v.first, p.a) + " |" + mask_to_ids(v.second, p.b) + "\n";
    return out;
}

StableSpan parse_span(const std::string& text, const Resolver& resolve) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, "span", 5, 5, "span <name> <source> <target> <vertex>");
    StableSpan sp{h.tokens[1].text, resolve_at(resolve, h, 2), resolve_at(resolve, h, 3), resolve_at(resolve, h, 4),
                  {}, {}};
    int n = sp.vertex.size();
    sp.out.assign(n, -1);
    sp.dem.assign(n, 0);
    std::vector<bool> has_dem(n, false);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        const auto& k = ln.tokens[0].text;
        if (ln.tokens.size() < 2) throw ln.error(0, "expected '" + k + " <vertex-id> ...'");
        int v = sp.vertex.index(ln.tokens[1].text);
        if (v < 0) throw ln.error(1, "unknown vertex event '" + ln.tokens[1].text + "'");
        if (k == "out") {
            if (ln.tokens.size() != 3) throw ln.error(0, "expected 'out <vertex-id> <target-id>'");
            int b = sp.b.index(ln.tokens[2].text);
            if (b < 0) throw ln.error(2, "unknown target event '" + ln.tokens[2].text + "'");
            sp.out[v] = b;
        } else if (k == "dem") {
            sp.dem[v] = ids_to_mask(ln, 2, ln.tokens.size(), sp.a);
            has_dem[v] = true;
        } else {
            throw ln.error(0, "unknown keyword '" + k + "'");
        }
    }
    for (int v = 0; v < n; ++v)
        if (sp.out[v] < 0 || !has_dem[v]) throw h.error(0, "vertex event '" + sp.vertex.id(v) + "' lacks out or dem");
    return sp;
}

std::string write_span(const StableSpan& sp, const std::string& source_ref, const std::string& target_ref,
                       const std::string& vertex_ref) {
    std::string out = "span " + (sp.name.empty() ? std::string("anon") : sp.name) + " " + source_ref + " " +
                      target_ref + " " + vertex_ref + "\n";
    for (int v = 0; v < sp.vertex.size(); ++v) {
        out += "out " + sp.vertex.id(v) + " " + sp.b.id(sp.out[v]) + "\n";
        out += "dem " + sp.vertex.id(v) + mask_to_ids(sp.dem[v], sp.a) + "\n";
    }
    return out;
}

std::string dir_of(const std::string& path) {
    auto p = fs::path(path).parent_path();
    return p.empty() ? std::string(".") : p.string();
}

std::string stem_of(const std::string& path) {
    auto p = fs::path(path);
    return (p.parent_path() / p.stem()).string();
}

EventStructure load_es(const std::string& path) { return parse_es(read_file(path)); }

void save_es(const EventStructure& e, const std::string& path) { write_file(path, write_es(e)); }

Strategy load_strategy(const std::string& path) {
    return parse_strategy(read_file(path), directory_resolver(dir_of(path)));
}

void save_strategy(const Strategy& s, const std::string& path) {
    StrategyRefs refs{ref_name(path, "carrier"), ref_name(path, "game"), ref_name(path, "source"),
                      ref_name(path, "target")};
    save_es(s.carrier, sibling(path, refs.carrier));
    if (s.is_arrow()) {
        save_es(s.source(), sibling(path, refs.source));
        save_es(s.target(), sibling(path, refs.target));
    } else {
        save_es(s.game, sibling(path, refs.game));
    }
    write_file(path, write_strategy(s, refs));
}

void save_lens(const Lens& l, const std::string& path) {
    save_pair(path, l.a, l.b, [&](const std::string& a, const std::string& b) { return write_lens(l, a, b); });
}

void save_dlens(const DependentLens& l, const std::string& path) {
    save_pair(path, l.a, l.b, [&](const std::string& a, const std::string& b) { return write_dlens(l, a, b); });
}

void save_goi(const GoIPair& p, const std::string& path) {
    save_pair(path, p.a, p.b, [&](const std::string& a, const std::string& b) { return write_goi(p, a, b); });
}

void save_cfun(const ConfigFunction& f, const std::string& path) {
    save_pair(path, f.source, f.target,
              [&](const std::string& a, const std::string& b) { return write_cfun(f, a, b); });
}

void save_span(const StableSpan& sp, const std::string& path) {
    auto v = ref_name(path, "vertex");
    save_es(sp.vertex, sibling(path, v));
    save_pair(path, sp.a, sp.b,
              [&](const std::string& a, const std::string& b) { return write_span(sp, a, b, v); });
}

Presentation load_presentation(const std::string& path) {
    auto lines = detail::tokenize(read_file(path));
    header(lines, "presentation", 2, 2, "presentation <name>");
    auto dir = dir_of(path);
    std::map<std::string, const Line*> at;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        const auto& k = ln.tokens[0].text;
        if (k != "source" && k != "target" && k != "residual" && k != "forward" && k != "backward" && k != "optic")
            throw ln.error(0, "unknown keyword '" + k + "'");
        if (ln.tokens.size() != 2) throw ln.error(0, "expected '" + k + " <file>'");
        if (!at.emplace(k, &ln).second) throw ln.error(0, "'" + k + "' given twice");
    }
    auto need = [&](const std::string& k) -> const Line& {
        auto it = at.find(k);
        if (it == at.end()) throw lines.front().error(0, "missing '" + k + "'");
        return *it->second;
    };
    auto res = directory_resolver(dir);
    Presentation p;
    p.a = resolve_at(res, need("source"), 1);
    p.b = resolve_at(res, need("target"), 1);
    p.q = resolve_at(res, need("residual"), 1);
    p.f = load_strategy((fs::path(dir) / need("forward").tokens[1].text).string());
    p.g = load_strategy((fs::path(dir) / need("backward").tokens[1].text).string());
    return p;
}

void save_presentation(const Presentation& p, const std::string& path) {
    auto stem = fs::path(stem_of(path)).filename().string();
    auto sa = stem + ".source.es", sb = stem + ".target.es", sq = stem + ".residual.es";
    auto f = stem + ".forward.strategy", g = stem + ".backward.strategy", o = stem + ".optic.strategy";
    save_es(p.a, sibling(path, sa));
    save_es(p.b, sibling(path, sb));
    save_es(p.q, sibling(path, sq));
    save_strategy(p.f, sibling(path, f));
    save_strategy(p.g, sibling(path, g));
    save_strategy(optic_of_presentation(p), sibling(path, o));
    write_file(path, "presentation " + p.a.name + "_" + p.b.name + "\nsource " + sa + "\ntarget " + sb +
                         "\nresidual " + sq + "\nforward " + f + "\nbackward " + g + "\noptic " + o + "\n");
}

Manifest parse_manifest(const std::string& text) {
    auto lines = detail::tokenize(text);
    const auto& h = header(lines, "manifest", 2, 2, "manifest <name>");
    Manifest m{h.tokens[1].text, {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        if (ln.tokens[0].text != "item" || ln.tokens.size() != 2) throw ln.error(0, "expected 'item <path>'");
        m.items.push_back(ln.tokens[1].text);
    }
    return m;
}

std::string kind_of(const Object& o) {
    static const char* names[] = {"es",   "family", "strategy", "cfun", "wins",         "levels",
                                  "lens", "dlens",  "goi",      "span", "presentation", "manifest"};
    return names[o.index()];
}

std::string name_of(const Object& o) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, WinningConditions>) return "wins:" + x.game.name;
            else if constexpr (std::is_same_v<T, Lens> || std::is_same_v<T, DependentLens> ||
                               std::is_same_v<T, GoIPair>)
                return x.a.name + "_" + x.b.name;
            else if constexpr (std::is_same_v<T, Presentation>) return x.a.name + "_" + x.b.name;
            else return x.name;
        },
        o);
}

Object load_object(const std::string& path) {
    auto text = read_file(path);
    auto kind = file_kind(text);
    auto res = directory_resolver(dir_of(path));
    if (kind == "es") return parse_es(text);
    if (kind == "family") return parse_family(text);
    if (kind == "strategy") return parse_strategy(text, res);
    if (kind == "cfun") return parse_cfun(text, res);
    if (kind == "wins") return parse_wins(text, res);
    if (kind == "levels") return parse_levels(text);
    if (kind == "lens") return parse_lens(text, res);
    if (kind == "dlens") return parse_dlens(text, res);
    if (kind == "goi") return parse_goi(text, res);
    if (kind == "span") return parse_span(text, res);
    if (kind == "presentation") return load_presentation(path);
    if (kind == "manifest") return parse_manifest(text);
    throw ParseError(1, 1, "unknown file kind '" + kind + "'");
}

Report validate_object(const Object& o) {
    return std::visit(
        [](const auto& x) -> Report {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, EventStructure>) return validate_event_structure(x);
            else if constexpr (std::is_same_v<T, StableFamily>) return validate_family(x);
            else if constexpr (std::is_same_v<T, Strategy>) return check_strategy(x);
            else if constexpr (std::is_same_v<T, ConfigFunction>) return validate_cfun(x);
            else if constexpr (std::is_same_v<T, WinningConditions>) return validate_wins(x);
            else if constexpr (std::is_same_v<T, StableSpan>) return validate_span(x);
            else if constexpr (std::is_same_v<T, Presentation>) return validate_presentation(x);
            else if constexpr (std::is_same_v<T, AccessOrder>) {
                Report r;
                for (auto [a, b] : x.prec)
                    if (a != b && x.leq(b, a))
                        r.add("preorder", "levels " + std::to_string(a) + " and " + std::to_string(b) +
                                              " are identified by the order");
                return r;
            } else if constexpr (std::is_same_v<T, Lens> || std::is_same_v<T, DependentLens>) {
                Report r;
                for (auto& [k, v] : x.bwd)
                    if (!x.fwd.count(k.first)) r.add("shape", "bwd entry at an input without fwd", {k.first});
                return r;
            } else {
                return Report{};
            }
        },
        o);
}

const Object& Workspace::load(const std::string& path) {
    auto obj = load_object(path);
    auto name = kind_of(obj) + ":" + name_of(obj);
    auto canon = fs::weakly_canonical(path).string();
    auto it = path_of_.find(name);
    if (it != path_of_.end() && it->second != canon) {
        const auto* a = std::get_if<EventStructure>(&by_name_.at(name));
        const auto* b = std::get_if<EventStructure>(&obj);
        if (!(a && b && *a == *b))
            throw Error("name '" + name_of(obj) + "' of " + path + " is already taken by " + it->second);
        return by_name_.at(name);
    }
    path_of_[name] = canon;
    return by_name_[name] = std::move(obj);
}

}  // namespace cg
