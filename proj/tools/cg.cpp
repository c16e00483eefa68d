#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cg/composition.hpp"
#include "cg/dot.hpp"
#include "cg/formats.hpp"
#include "cg/function_space.hpp"
#include "cg/iso.hpp"

using namespace cg;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, failed = 1, cap = 2, usage = 3 };

// A report is an ordered tree; text output is "key: value" with nesting by indentation.
struct Out {
    json root = json::object();
    bool as_json = false;
    bool timing = true;

    void render(std::ostream& os, const std::string& key, const json& v, int indent) const {
        std::string pad(indent, ' ');
        if (v.is_object()) {
            os << pad << key << ":\n";
            for (const auto& [k, x] : v.items()) render(os, k, x, indent + 2);
        } else if (v.is_array()) {
            os << pad << key << ":";
            if (v.empty()) os << " []";
            os << "\n";
            for (const auto& x : v) {
                if (x.is_object()) {
                    os << pad << "  -\n";
                    for (const auto& [k, y] : x.items()) render(os, k, y, indent + 4);
                } else {
                    os << pad << "  - " << scalar(x) << "\n";
                }
            }
        } else {
            os << pad << key << ": " << scalar(v) << "\n";
        }
    }
    static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

    void print(std::ostream& os) const {
        if (as_json) {
            os << root.dump(2) << "\n";
            return;
        }
        for (const auto& [k, v] : root.items()) render(os, k, v, 0);
    }
};

std::string show_mask(const EventStructure& e, Mask x) { return e.show(x); }

json violations(const Report& r) {
    json a = json::array();
    for (const auto& v : r.violations) a.push_back(v.kind + ": " + v.detail);
    return a;
}

json witness_map(const EventStructure& a, const EventStructure& b, const std::vector<int>& f) {
    json m = json::array();
    for (int e = 0; e < a.size(); ++e) m.push_back(a.id(e) + " -> " + (f[e] < 0 ? "?" : b.id(f[e])));
    return m;
}

Strategy need_strategy(const Object& o, const std::string& path) {
    if (const auto* s = std::get_if<Strategy>(&o)) return *s;
    throw Error(path + ": expected a strategy file, got " + kind_of(o));
}

Strategy need_arrow(const Object& o, const std::string& path) {
    auto s = need_strategy(o, path);
    if (!s.is_arrow()) throw Error(path + ": strategy '" + s.name + "' is not between two games");
    return s;
}

EventStructure need_game(const Object& o, const std::string& path) {
    if (const auto* e = std::get_if<EventStructure>(&o)) return *e;
    throw Error(path + ": expected an es file, got " + kind_of(o));
}

std::optional<AccessOrder> load_levels(const std::string& path) {
    if (path.empty()) return std::nullopt;
    auto o = load_object(path);
    if (const auto* l = std::get_if<AccessOrder>(&o)) return *l;
    throw Error(path + ": expected a levels file, got " + kind_of(o));
}

std::string default_out(const std::string& in, const std::string& suffix) {
    return stem_of(in) + "." + suffix;
}

// --- check ---------------------------------------------------------------

struct Checked {
    std::string path, kind, name;
    Report report;
    std::string error;
    int code = ok;
};

void expand(const std::string& path, std::vector<std::string>& out, int depth = 0) {
    if (depth > 8) throw Error(path + ": manifests nest too deeply");
    auto text = read_file(path);
    if (file_kind(text) != "manifest") {
        out.push_back(path);
        return;
    }
    auto m = parse_manifest(text);
    for (const auto& item : m.items) expand((fs::path(dir_of(path)) / item).string(), out, depth + 1);
}

int cmd_check(Out& out, const std::vector<std::string>& paths, int jobs) {
    std::vector<std::string> files;
    for (const auto& p : paths) {
        try {
            expand(p, files);
        } catch (const ParseError& e) {
            out.root["verdict"] = "parse error";
            out.root["error"] = p + ":" + e.what();
            return usage;
        } catch (const Error& e) {
            out.root["verdict"] = "unreadable";
            out.root["error"] = e.what();
            return usage;
        }
    }
    Workspace ws;
    std::vector<Checked> res(files.size());
    std::vector<const Object*> objs(files.size(), nullptr);
    for (std::size_t i = 0; i < files.size(); ++i) {
        res[i].path = files[i];
        try {
            objs[i] = &ws.load(files[i]);
            res[i].kind = kind_of(*objs[i]);
            res[i].name = name_of(*objs[i]);
        } catch (const ParseError& e) {
            res[i].error = e.what();
            res[i].code = usage;
        } catch (const CapExceeded& e) {
            res[i].error = e.what();
            res[i].code = cap;
        } catch (const Error& e) {
            res[i].error = e.what();
            res[i].code = failed;
        }
    }
    auto run = [&](std::size_t i) {
        if (!objs[i]) return;
        try {
            res[i].report = validate_object(*objs[i]);
            if (!res[i].report.ok()) res[i].code = failed;
        } catch (const CapExceeded& e) {
            res[i].error = e.what();
            res[i].code = cap;
        } catch (const Error& e) {
            res[i].error = e.what();
            res[i].code = failed;
        }
    };
    for (std::size_t start = 0; start < files.size(); start += static_cast<std::size_t>(jobs)) {
        std::vector<std::future<void>> batch;
        for (std::size_t i = start; i < std::min(files.size(), start + jobs); ++i)
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run, i));
        for (auto& f : batch) f.get();
    }
    int code = ok;
    json items = json::array();
    for (const auto& r : res) {
        json it;
        it["path"] = r.path;
        if (!r.kind.empty()) it["kind"] = r.kind + " " + r.name;
        it["verdict"] = r.code == ok ? "valid" : r.code == cap ? "cap" : r.code == usage ? "parse error" : "invalid";
        if (!r.error.empty()) it["error"] = r.error;
        if (!r.report.ok()) it["violations"] = violations(r.report);
        items.push_back(it);
        code = std::max(code, r.code);
    }
    out.root["files"] = items;
    out.root["verdict"] = code == ok ? "all valid" : "not all valid";
    return code;
}

// --- compose -------------------------------------------------------------

int cmd_compose(Out& out, const std::string& sp, const std::string& tp, std::string dest, bool keep,
                const std::string& format, std::ostream& dot) {
    auto s = need_arrow(load_object(sp), sp), t = need_arrow(load_object(tp), tp);
    if (!(s.target() == t.source())) {
        out.root["verdict"] = "not composable";
        out.root["error"] = "middle-game mismatch: target " + s.target().name + " of " + s.name + " vs source " +
                            t.source().name + " of " + t.name;
        return failed;
    }
    auto c = compose_full(s, t);
    if (dest.empty()) dest = default_out(tp, "after." + fs::path(sp).stem().string() + ".strategy");
    c.strategy.name = t.name + "_o_" + s.name;
    save_strategy(c.strategy, dest);
    out.root["composite"] = c.strategy.name;
    out.root["game"] = c.strategy.source().name + " -> " + c.strategy.target().name;
    out.root["events"] = c.strategy.carrier.size();
    out.root["written"] = dest;
    if (keep) {
        auto ip = stem_of(dest) + ".interaction.strategy";
        auto pp = stem_of(dest) + ".provenance";
        auto inter = make_strategy(c.strategy.name + "_interaction", c.interaction.es, c.interaction.game,
                                   c.interaction.label);
        save_strategy(inter, ip);
        std::string table = "# interaction-event sigma-event tau-event\n";
        for (const auto& h : c.provenance) table += "hidden " + h.id + " " + h.sigma_id + " " + h.tau_id + "\n";
        write_file(pp, table);
        out.root["interaction"] = ip;
        out.root["provenance"] = pp;
        out.root["hidden"] = c.provenance.size();
    }
    auto r = check_strategy(c.strategy);
    out.root["verdict"] = r.ok() ? "strategy" : "not a strategy";
    if (!r.ok()) out.root["violations"] = violations(r);
    if (format == "dot") dot << strategy_to_dot(c.strategy);
    return r.ok() ? ok : failed;
}

// --- iso -----------------------------------------------------------------

int cmd_iso(Out& out, const std::string& ap, const std::string& bp) {
    auto a = load_object(ap), b = load_object(bp);
    if (kind_of(a) != kind_of(b)) throw Error("kind mismatch: " + kind_of(a) + " vs " + kind_of(b));
    IsoResult r;
    const EventStructure *ea = nullptr, *eb = nullptr;
    if (kind_of(a) == "es") {
        ea = &std::get<EventStructure>(a);
        eb = &std::get<EventStructure>(b);
        r = find_iso(*ea, *eb, nullptr, nullptr, default_caps().iso);
    } else if (kind_of(a) == "strategy") {
        const auto& s = std::get<Strategy>(a);
        const auto& t = std::get<Strategy>(b);
        if (!(s.game == t.game)) {
            out.root["verdict"] = "none";
            out.root["reason"] = "different games";
            return failed;
        }
        ea = &s.carrier;
        eb = &t.carrier;
        r = strategies_isomorphic(s, t, default_caps().iso);
    } else {
        throw Error("iso compares es or strategy files, not " + kind_of(a));
    }
    switch (r.verdict) {
        case IsoVerdict::found:
            out.root["verdict"] = "isomorphic";
            out.root["witness"] = witness_map(*ea, *eb, r.witness);
            return ok;
        case IsoVerdict::none:
            out.root["verdict"] = "none";
            return failed;
        default:
            out.root["verdict"] = "unknown (cap)";
            out.root["caps_hit"] = json::array({"iso search above " + std::to_string(default_caps().iso) + " events"});
            return cap;
    }
}

// --- extract -------------------------------------------------------------

json law(bool holds, json detail = nullptr) {
    json j;
    j["holds"] = holds;
    if (!detail.is_null()) j["witness"] = detail;
    return j;
}

int cmd_extract(Out& out, const std::string& kind, const std::string& sp, std::string dest,
                const std::string& partner, const std::string& levels) {
    auto s = need_arrow(load_object(sp), sp);
    std::optional<Strategy> t;
    if (!partner.empty()) {
        t = need_arrow(load_object(partner), partner);
        if (!(s.target() == t->source())) throw Error("middle-game mismatch with partner " + t->name);
    }
    auto composite = [&] { return compose(s, *t); };
    static const std::map<std::string, std::string> ext = {
        {"stable", "cfun"}, {"span", "span"},   {"goi", "goi"}, {"lens", "lens"}, {"dlens", "dlens"},
        {"canonical", "presentation"}, {"sigma-plus", "plus.strategy"}};
    if (dest.empty()) dest = default_out(sp, ext.at(kind));
    out.root["kind"] = kind;
    out.root["strategy"] = s.name;
    bool holds = true;
    try {
        if (kind == "stable") {
            auto f = extract_stable_function(s);
            save_cfun(f, dest);
            out.root["entries"] = f.table.size();
            if (t) {
                auto g = extract_stable_function(*t), gf = extract_stable_function(composite());
                auto both = compose_cfun(f, g);
                json bad = nullptr;
                for (Mask x : both.domain())
                    if (gf(x) != both(x) && bad.is_null()) bad = show_mask(f.source, x);
                holds = bad.is_null();
                out.root["law g.f"] = law(holds, bad);
            }
        } else if (kind == "span") {
            auto f = extract_stable_span(s);
            save_span(f, dest);
            out.root["vertex events"] = f.vertex.size();
            if (t) {
                auto g = extract_stable_span(*t), gf = extract_stable_span(composite());
                json bad = nullptr;
                for (Mask x : all_configurations(f.a))
                    if (span_outputs(gf, x) != let_outputs(f, g, x) && bad.is_null()) bad = show_mask(f.a, x);
                holds = bad.is_null();
                out.root["law let"] = law(holds, bad);
            }
        } else if (kind == "goi") {
            auto p = goi_pair(s);
            save_goi(p, dest);
            out.root["entries"] = p.table.size();
            std::map<Mask, Mask> y1_of;
            bool constant = true;
            for (const auto& [in, o] : p.table) {
                auto [it, fresh] = y1_of.emplace(in.first, o.second);
                if (!fresh && it->second != o.second) constant = false;
            }
            out.root["forward constant in y"] = constant;
            if (t) {
                auto q = goi_pair(*t);
                auto tr = goi_trace_compose(p, q);
                auto direct = goi_pair(composite());
                bool eq = tr.pair == direct;
                bool bounded = tr.max_rounds <= s.target().size() + 1;
                holds = eq && bounded;
                out.root["law trace"] = law(eq);
                out.root["rounds"] = std::to_string(tr.max_rounds) + " (bound " +
                                     std::to_string(s.target().size() + 1) + ")";
            }
        } else if (kind == "lens" || kind == "dlens") {
            auto order = load_levels(levels);
            if (kind == "lens") {
                auto l = extract_lens(s, order ? &*order : nullptr);
                save_lens(l, dest);
                out.root["fwd entries"] = l.fwd.size();
                out.root["bwd entries"] = l.bwd.size();
                out.root["bwd uses x"] = l.bwd_uses_x();
                if (t) {
                    auto m = extract_lens(*t, order ? &*order : nullptr);
                    holds = extract_lens(composite(), order ? &*order : nullptr) == compose_lenses(l, m);
                    out.root["law compose"] = law(holds);
                }
            } else {
                auto l = extract_dependent_lens(s);
                save_dlens(l, dest);
                out.root["fwd entries"] = l.fwd.size();
                out.root["bwd entries"] = l.bwd.size();
                if (t) {
                    auto m = extract_dependent_lens(*t);
                    holds = extract_dependent_lens(composite()) == compose_dependent_lenses(l, m);
                    out.root["law compose"] = law(holds);
                }
            }
        } else if (kind == "canonical") {
            auto p = canonical_presentation(s);
            save_presentation(p, dest);
            out.root["residual events"] = p.q.size();
            auto back = strategies_isomorphic(optic_of_presentation(p), s, default_caps().iso);
            if (back.verdict == IsoVerdict::unknown) throw CapExceeded("iso search for the optic of '" + s.name + "'");
            holds = bool(back);
            out.root["law optic"] = law(holds);
            if (t) {
                auto q = canonical_presentation(*t);
                auto whole = strategies_isomorphic(optic_of_presentation(compose_presentations(p, q)), composite(),
                                                   default_caps().iso);
                if (whole.verdict == IsoVerdict::unknown) throw CapExceeded("iso search for the composite optic");
                out.root["law compose"] = law(bool(whole));
                holds = holds && whole;
            }
        } else if (kind == "sigma-plus") {
            auto d = dop_family(s.source(), s.target());
            auto plus = sigma_plus(s, d);
            auto as_strategy = make_strategy(s.name + "_plus", plus.plus, d.es(), plus.event);
            save_strategy(as_strategy, dest);
            out.root["dOp events"] = d.es().size();
            out.root["plus events"] = plus.plus.size();
            holds = check_triangle(s, d, plus);
            out.root["law triangle"] = law(holds);
            if (t) {
                auto e = dop_family(t->source(), t->target());
                auto tp = sigma_plus(*t, e);
                auto c = composite();
                auto dc = dop_family(c.source(), c.target());
                auto cp = sigma_plus(c, dc);
                json bad = nullptr;
                for (Mask x : all_configurations(sides(s.source()).p)) {
                    Mask xa = 0;
                    int i = 0;
                    for_each_bit(s.source().pos(), [&](int ev) {
                        if (has(x, i++)) xa |= bit(ev);
                    });
                    if (optic_values(dc, cp, xa) != let_values(d, plus, e, tp, xa) && bad.is_null())
                        bad = show_mask(s.source(), xa);
                }
                out.root["law let"] = law(bad.is_null(), bad);
                holds = holds && bad.is_null();
            }
        } else {
            throw Error("unknown extraction '" + kind + "'");
        }
    } catch (const Refused& e) {
        out.root["verdict"] = "class mismatch";
        out.root["error"] = e.what();
        return failed;
    }
    out.root["written"] = dest;
    out.root["verdict"] = holds ? "ok" : "law fails";
    return holds ? ok : failed;
}

// --- dot / classify / winning / levels -------------------------------------

int cmd_dot(Out& out, const std::string& path, const std::string& dest, std::ostream& os) {
    auto o = load_object(path);
    std::string text;
    if (const auto* e = std::get_if<EventStructure>(&o)) text = es_to_dot(*e);
    else if (const auto* s = std::get_if<Strategy>(&o)) text = strategy_to_dot(*s);
    else throw Error("dot draws es or strategy files, not " + kind_of(o));
    if (dest.empty()) {
        os << text;
        return ok;
    }
    write_file(dest, text);
    out.root["written"] = dest;
    return ok;
}

int cmd_classify(Out& out, const std::string& path, const std::string& levels) {
    auto g = need_game(load_object(path), path);
    auto order = load_levels(levels);
    auto r = validate_event_structure(g);
    if (!r.ok()) {
        out.root["verdict"] = "invalid";
        out.root["violations"] = violations(r);
        return failed;
    }
    json tags = json::array();
    for (const auto& c : classify_game(g, order ? &*order : nullptr))
        tags.push_back(c.tag == "comb" ? "comb(" + std::to_string(c.n) + ")" : c.tag);
    out.root["game"] = g.name;
    out.root["race-free"] = is_race_free(g);
    out.root["classes"] = tags;
    return ok;
}

int cmd_winning(Out& out, const std::string& sp, const std::vector<std::string>& wins) {
    auto s = need_strategy(load_object(sp), sp);
    auto load_w = [](const std::string& p) {
        auto o = load_object(p);
        if (const auto* w = std::get_if<WinningConditions>(&o)) return *w;
        throw Error(p + ": expected a wins file, got " + kind_of(o));
    };
    WinningConditions w;
    if (wins.size() == 1) {
        w = load_w(wins[0]);
    } else if (wins.size() == 2) {
        if (!s.is_arrow()) throw Error("two wins files need a strategy between games");
        w = winning_arrow(load_w(wins[0]), load_w(wins[1]));
    } else {
        throw Error("give the wins of the strategy's game, or of its source and target");
    }
    if (!(w.game == s.game)) throw Error("wins are on " + w.game.name + ", the strategy plays on " + s.game.name);
    auto r = check_winning_strategy(s, w);
    out.root["strategy"] = s.name;
    out.root["verdict"] = r.winning ? "winning" : "not winning";
    if (!r.winning) {
        json l = json::array();
        for (Mask x : r.losing) l.push_back(s.carrier.show(x) + " |-> " + s.game.show(s.image(x)));
        out.root["losing"] = l;
    }
    return r.winning ? ok : failed;
}

int cmd_levels(Out& out, const std::string& path, const std::string& levels) {
    auto o = load_object(path);
    auto order = load_levels(levels);
    auto game = std::holds_alternative<Strategy>(o) ? std::get<Strategy>(o).game : need_game(o, path);
    if (!order) order = numeric_order([&] {
        std::vector<int> ls(game.levels().begin(), game.levels().end());
        std::sort(ls.begin(), ls.end());
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        return ls;
    }());
    auto r = validate_levelled_game(game, *order);
    out.root["game"] = game.name;
    out.root["order"] = order->name.empty() ? "numeric" : order->name;
    if (!r.ok()) {
        out.root["verdict"] = "game does not respect the order";
        out.root["violations"] = violations(r);
        return failed;
    }
    if (const auto* s = std::get_if<Strategy>(&o)) {
        std::pair<int, int> w{-1, -1};
        bool good = check_lambda_strategy(*s, *order, &w);
        out.root["strategy"] = s->name;
        out.root["verdict"] = good ? "respects levels" : "breaks levels";
        if (!good)
            out.root["witness"] = s->carrier.id(w.first) + " <= " + s->carrier.id(w.second) + " but level " +
                                  std::to_string(game.level(s->label[w.first])) + " not below " +
                                  std::to_string(game.level(s->label[w.second]));
        return good ? ok : failed;
    }
    out.root["verdict"] = "respects levels";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite concurrent games and strategies on event structures"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    bool as_json = false, no_timing = false;
    int cap_events = -1, cap_iso = -1, cap_fspace = -1;
    app.add_option("--format", format, "text or dot")->check(CLI::IsMember({"text", "dot"}));
    app.add_flag("--json", as_json, "machine-readable report");
    app.add_flag("--no-timing", no_timing, "omit the timing field");
    app.add_option("--cap-events", cap_events, "configuration enumeration cap (default 20, env CG_CAPS)");
    app.add_option("--cap-iso", cap_iso, "isomorphism and 2-cell search cap (default 12)");
    app.add_option("--cap-fspace", cap_fspace, "function-space events per side (default 4)");

    std::vector<std::string> paths, wins;
    std::string a, b, out_path, partner, levels, kind;
    bool keep = false;
    int jobs = 1;

    auto* check = app.add_subcommand("check", "validate files by kind");
    check->add_option("files", paths, "files or manifests")->required()->check(CLI::ExistingFile);
    check->add_option("-j,--jobs", jobs, "parallel validations")->check(CLI::Range(1, 64));

    auto* comp = app.add_subcommand("compose", "tau after sigma");
    comp->add_option("sigma", a)->required()->check(CLI::ExistingFile);
    comp->add_option("tau", b)->required()->check(CLI::ExistingFile);
    comp->add_option("-o,--out", out_path, "composite strategy file");
    comp->add_flag("--keep-interaction", keep, "also write the interaction and provenance table");

    auto* iso = app.add_subcommand("iso", "isomorphism of two es or strategy files");
    iso->add_option("a", a)->required()->check(CLI::ExistingFile);
    iso->add_option("b", b)->required()->check(CLI::ExistingFile);

    auto* ext = app.add_subcommand("extract", "functional view of a strategy");
    ext->add_option("kind", kind)
        ->required()
        ->check(CLI::IsMember({"stable", "span", "goi", "lens", "dlens", "canonical", "sigma-plus"}));
    ext->add_option("sigma", a)->required()->check(CLI::ExistingFile);
    ext->add_option("-o,--out", out_path, "output file");
    ext->add_option("--partner", partner, "second strategy; runs the composition law")->check(CLI::ExistingFile);
    ext->add_option("--levels", levels, "access order for lens extraction")->check(CLI::ExistingFile);

    auto* dot = app.add_subcommand("dot", "Graphviz drawing of an es or strategy");
    dot->add_option("object", a)->required()->check(CLI::ExistingFile);
    dot->add_option("-o,--out", out_path, "DOT file; stdout when absent");

    auto* cls = app.add_subcommand("classify", "game classes");
    cls->add_option("game", a)->required()->check(CLI::ExistingFile);
    cls->add_option("--levels", levels, "access order")->check(CLI::ExistingFile);

    auto* win = app.add_subcommand("winning", "winning check");
    win->add_option("strategy", a)->required()->check(CLI::ExistingFile);
    win->add_option("wins", wins, "wins of the game, or of source then target")->required()->check(
        CLI::ExistingFile);

    auto* lev = app.add_subcommand("levels", "access-level check of a game or strategy");
    lev->add_option("object", a)->required()->check(CLI::ExistingFile);
    lev->add_option("--levels", levels, "access order; numeric on the levels present when absent")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    Out out;
    out.as_json = as_json;
    out.timing = !no_timing;
    std::string echo = "cg";
    for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];
    out.root["command"] = echo;

    auto start = std::chrono::steady_clock::now();
    int code = ok;
    bool report = true;
    try {
        Caps caps = default_caps();
        if (cap_events >= 0) caps.events = cap_events;
        if (cap_iso >= 0) caps.iso = cap_iso;
        if (cap_fspace >= 0) caps.fspace = cap_fspace;
        set_default_caps(caps);
        out.root["caps"] = "events=" + std::to_string(caps.events) + " iso=" + std::to_string(caps.iso) +
                           " fspace=" + std::to_string(caps.fspace);

        if (*check) code = cmd_check(out, paths, jobs);
        else if (*comp) code = cmd_compose(out, a, b, out_path, keep, format, std::cout);
        else if (*iso) code = cmd_iso(out, a, b);
        else if (*ext) code = cmd_extract(out, kind, a, out_path, partner, levels);
        else if (*dot) code = cmd_dot(out, a, out_path, std::cout);
        else if (*cls) code = cmd_classify(out, a, levels);
        else if (*win) code = cmd_winning(out, a, wins);
        else if (*lev) code = cmd_levels(out, a, levels);
        if (format == "dot" && *comp) report = false;
        if (*dot && out_path.empty()) report = false;
    } catch (const ParseError& e) {
        out.root["verdict"] = "parse error";
        out.root["error"] = e.what();
        code = usage;
    } catch (const CapExceeded& e) {
        out.root["verdict"] = "cap";
        out.root["caps_hit"] = json::array({e.what()});
        code = cap;
    } catch (const Error& e) {
        out.root["verdict"] = "failed";
        out.root["error"] = e.what();
        code = failed;
    }
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (out.timing) out.root["time_ms"] = std::round(ms * 10) / 10;
    out.root["exit"] = code;
    // with DOT on stdout the report goes to stderr
    out.print(report ? std::cout : std::cerr);
    return code;
}
