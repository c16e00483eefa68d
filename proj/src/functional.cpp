#include "cg/functional.hpp"

#include "cg/composition.hpp"

namespace cg {

namespace {

Mask expand(Mask local, Mask visible) {
    Mask out = 0;
    int i = 0;
    for_each_bit(visible, [&](int e) {
        if (has(local, i)) out |= bit(e);
        ++i;
    });
    return out;
}

std::vector<Mask> configs_within(const EventStructure& a, Mask m) {
    std::vector<Mask> out;
    for (Mask v : all_configurations(hide(a, m))) out.push_back(expand(v, m));
    return out;
}

void require_arrow(const Strategy& s, const char* what) {
    if (!s.is_arrow()) throw Error(std::string(what) + " needs a strategy between games");
}

void require_deterministic(const Strategy& s) {
    if (!is_deterministic(s)) throw Refused("'" + s.name + "' is not deterministic");
}

void require_player(const EventStructure& a) {
    if (a.neg() || a.neutral()) throw Refused("'" + a.name + "' is not a purely Player game");
}

}  // namespace

Mask largest_response(const Strategy& s, Mask input) {
    const auto& c = s.carrier;
    Mask neg = s.game.neg();
    Mask z = 0;
    for (int e = 0; e < c.size(); ++e)
        if (subset(s.image(c.down(e)) & neg, input)) z |= c.down(e);
    if (!c.consistent(z))
        throw Refused("responses of '" + s.name + "' to " + s.game.show(input) + " are inconsistent");
    return z;
}

ConfigFunction extract_stable_function(const Strategy& s) {
    require_arrow(s, "extract_stable_function");
    require_player(s.source());
    require_player(s.target());
    require_deterministic(s);
    int na = s.source().size();
    return tabulate(s.name, s.source(), s.target(),
                    [&](Mask x) { return right_part(na, s.image(largest_response(s, x))); });
}

Mask StableSpan::demand(Mask w) const {
    Mask d = 0;
    for_each_bit(w, [&](int e) { d |= dem[e]; });
    return d;
}

Mask StableSpan::output(Mask w) const {
    Mask y = 0;
    for_each_bit(w, [&](int e) { y |= bit(out[e]); });
    return y;
}

Report validate_span(const StableSpan& sp) {
    Report r;
    if (static_cast<int>(sp.out.size()) != sp.vertex.size() ||
        static_cast<int>(sp.dem.size()) != sp.vertex.size()) {
        r.add("shape", "span tables do not match the vertex");
        return r;
    }
    ESMap m{sp.vertex, sp.b, sp.out};
    r.merge(check_map(m));
    if (r.ok() && !is_rigid(m)) r.add("rigid", "output map is not rigid");
    for (int e = 0; e < sp.vertex.size(); ++e) {
        if (!sp.a.is_config(sp.dem[e]))
            r.add("demand", "demand of " + sp.vertex.id(e) + " is not a configuration", {sp.dem[e]}, {e});
        for_each_bit(sp.vertex.down(e), [&](int d) {
            if (!subset(sp.dem[d], sp.dem[e]))
                r.add("demand", "demand shrinks from " + sp.vertex.id(d) + " to " + sp.vertex.id(e), {}, {d, e});
        });
    }
    return r;
}

StableSpan extract_stable_span(const Strategy& s) {
    require_arrow(s, "extract_stable_span");
    require_player(s.source());
    require_player(s.target());
    int na = s.source().size();
    StableSpan sp;
    sp.name = s.name;
    sp.a = s.source();
    sp.b = s.target();
    Mask plus = s.carrier.pos();
    sp.vertex = hide(s.carrier, plus);
    for_each_bit(plus, [&](int e) {
        sp.out.push_back(s.label[e] - na);
        sp.dem.push_back(left_part(na, s.image(s.carrier.down(e))));
    });
    return sp;
}

Strategy strategy_of_span(const StableSpan& sp) {
    const auto& A = sp.a;
    const auto& E = sp.vertex;
    int na = A.size();
    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    for (const auto& id : A.ids()) {
        ids.push_back("L." + id);
        pol.push_back(Polarity::minus);
    }
    for (const auto& id : E.ids()) {
        ids.push_back("E." + id);
        pol.push_back(Polarity::plus);
    }
    auto covers = A.covers();
    for (auto [x, y] : E.covers()) covers.emplace_back(x + na, y + na);
    for (int e = 0; e < E.size(); ++e)
        for_each_bit(sp.dem[e], [&](int a) { covers.emplace_back(a, e + na); });
    auto conflicts = A.conflicts();
    for (Mask c : E.conflicts()) conflicts.push_back(c << na);
    auto carrier = make_es(sp.name, ids, pol, covers, conflicts, {});
    std::vector<int> label;
    for (int a = 0; a < na; ++a) label.push_back(a);
    for (int e = 0; e < E.size(); ++e) label.push_back(na + sp.out[e]);
    return make_arrow(sp.name, carrier, A, sp.b, label);
}

StableSpan identity_span(const EventStructure& a) {
    StableSpan sp{"id", a, a, a, {}, {}};
    for (int e = 0; e < a.size(); ++e) {
        sp.out.push_back(e);
        sp.dem.push_back(a.down(e));
    }
    return sp;
}

StableSpan span_compose(const StableSpan& f, const StableSpan& g) {
    auto s = compose(strategy_of_span(f), strategy_of_span(g));
    return extract_stable_span(s);
}

std::set<Mask> span_outputs(const StableSpan& sp, Mask x) {
    std::set<Mask> out;
    for (Mask w : all_configurations(sp.vertex))
        if (subset(sp.demand(w), x)) out.insert(sp.output(w));
    return out;
}

std::set<Mask> let_outputs(const StableSpan& f, const StableSpan& g, Mask x) {
    std::set<Mask> out;
    for (Mask y : span_outputs(f, x))
        for (Mask z : span_outputs(g, y)) out.insert(z);
    return out;
}

std::pair<Mask, Mask> GoIPair::operator()(Mask x1, Mask y2) const {
    auto it = table.find({x1, y2});
    if (it == table.end()) throw Error("GoI pair applied outside its domain");
    return it->second;
}

std::vector<Mask> player_configs(const EventStructure& a) { return configs_within(a, a.pos()); }
std::vector<Mask> opponent_configs(const EventStructure& a) { return configs_within(a, a.neg()); }

GoIPair goi_pair(const Strategy& s) {
    require_arrow(s, "goi_pair");
    for (const auto* g : {&s.source(), &s.target()})
        if (!is_goi_game(*g)) throw Refused("'" + g->name + "' is not a GoI game");
    require_deterministic(s);
    const auto& A = s.source();
    const auto& B = s.target();
    int na = A.size();
    GoIPair p{A, B, {}};
    for (Mask x1 : player_configs(A))
        for (Mask y2 : opponent_configs(B)) {
            Mask img = s.image(largest_response(s, x1 | (y2 << na)));
            p.table[{x1, y2}] = {left_part(na, img) & A.neg(), right_part(na, img) & B.pos()};
        }
    return p;
}

TraceResult goi_trace_compose(const GoIPair& s, const GoIPair& t) {
    if (!(s.b == t.a)) throw Error("GoI pairs do not meet at a common game");
    TraceResult r{{s.a, t.b, {}}, 0};
    for (Mask x1 : player_configs(s.a))
        for (Mask z2 : opponent_configs(t.b)) {
            Mask y1 = 0, y2 = 0;
            int rounds = 0;
            while (true) {
                ++rounds;
                auto [x2, ny1] = s(x1, y2);
                auto [ny2, z1] = t(y1, z2);
                if (ny1 == y1 && ny2 == y2) {
                    r.pair.table[{x1, z2}] = {x2, z1};
                    break;
                }
                y1 = ny1;
                y2 = ny2;
            }
            r.max_rounds = std::max(r.max_rounds, rounds);
        }
    return r;
}

bool goi_winning(const GoIPair& p, const WinningConditions& wa, const WinningConditions& wb) {
    for (const auto& [in, out] : p.table)
        if (wa.contains(in.first | out.first) && !wb.contains(out.second | in.second)) return false;
    return true;
}

Strategy goi_embed(const Strategy& s) {
    require_arrow(s, "goi_embed");
    for (const auto* g : {&s.source(), &s.target()})
        if (!is_race_free(*g)) throw Refused("'" + g->name + "' has a race");
    require_deterministic(s);
    auto fa = colift(split_cfun(s.source()));
    auto fb = lift(split_cfun(s.target()));
    auto out = compose(compose(fa, s), fb);
    out.name = "goi(" + s.name + ")";
    return out;
}

bool Lens::bwd_uses_x() const {
    std::map<Mask, Mask> by_y;
    for (const auto& [k, v] : bwd) {
        auto [it, fresh] = by_y.emplace(k.second, v);
        if (!fresh && it->second != v) return true;
    }
    return false;
}

Lens extract_lens(const Strategy& s, const AccessOrder* order) {
    require_arrow(s, "extract_lens");
    AccessOrder fallback = numeric_order({1, 2});
    const AccessOrder& o = order ? *order : fallback;
    for (const auto* g : {&s.source(), &s.target()})
        if (!is_dialectica(*g, o) && !is_girard_variant(*g, o))
            throw Refused("'" + g->name + "' is not a dialectica game");
    std::pair<int, int> w;
    if (!check_lambda_strategy(s, o, &w))
        throw Refused("'" + s.name + "' breaks the access order at " + s.carrier.id(w.first) + " <= " +
                      s.carrier.id(w.second));
    auto p = goi_pair(s);
    Lens l{s.source(), s.target(), {}, {}};
    for (const auto& [in, out] : p.table) {
        auto [it, fresh] = l.fwd.emplace(in.first, out.second);
        if (!fresh && it->second != out.second)
            throw Refused("forward part of '" + s.name + "' depends on the second argument");
        l.bwd[in] = out.first;
    }
    return l;
}

Lens compose_lenses(const Lens& l, const Lens& m) {
    if (!(l.b == m.a)) throw Error("lenses do not meet at a common game");
    Lens out{l.a, m.b, {}, {}};
    auto zs = opponent_configs(m.b);
    for (const auto& [x, y1] : l.fwd) {
        out.fwd[x] = m.fwd.at(y1);
        for (Mask z : zs) out.bwd[{x, z}] = l.bwd.at({x, m.bwd.at({y1, z})});
    }
    return out;
}

bool lens_winning(const Lens& l, const WinningConditions& wa, const WinningConditions& wb) {
    for (const auto& [in, g] : l.bwd)
        if (wa.contains(in.first | g) && !wb.contains(l.fwd.at(in.first) | in.second)) return false;
    return true;
}

bool respects_container_levels(const Strategy& s, std::pair<int, int>* witness) {
    int na = s.is_arrow() ? s.source().size() : 0;
    auto level = [&](int g) {
        Polarity p = s.game.pol(g);
        if (g < na) p = flip(p);
        return p == Polarity::plus ? 1 : 2;
    };
    const auto& c = s.carrier;
    for (int e = 0; e < c.size(); ++e)
        for (int d : members(c.down(e) & ~bit(e)))
            if (level(s.label[d]) > level(s.label[e])) {
                if (witness) *witness = {d, e};
                return false;
            }
    return true;
}

DependentLens extract_dependent_lens(const Strategy& s) {
    require_arrow(s, "extract_dependent_lens");
    const auto& A = s.source();
    const auto& B = s.target();
    for (const auto* g : {&A, &B})
        if (!is_container(*g)) throw Refused("'" + g->name + "' is not a container game");
    std::pair<int, int> w;
    if (!respects_container_levels(s, &w))
        throw Refused("'" + s.name + "' breaks the access order at " + s.carrier.id(w.first) + " <= " +
                      s.carrier.id(w.second));
    require_deterministic(s);
    int na = A.size();
    auto parts = container_parts(B);
    DependentLens l{A, B, {}, {}};
    for (Mask x : player_configs(A)) {
        Mask f = right_part(na, s.image(largest_response(s, x))) & B.pos();
        l.fwd[x] = f;
        for (Mask y : configs_within(B, parts.a2_events(f))) {
            Mask img = s.image(largest_response(s, x | (y << na)));
            if ((right_part(na, img) & B.pos()) != f)
                throw Refused("forward part of '" + s.name + "' depends on Opponent moves of the target");
            l.bwd[{x, y}] = left_part(na, img) & A.neg();
        }
    }
    return l;
}

DependentLens compose_dependent_lenses(const DependentLens& l, const DependentLens& m) {
    if (!(l.b == m.a)) throw Error("dependent lenses do not meet at a common game");
    DependentLens out{l.a, m.b, {}, {}};
    auto parts = container_parts(m.b);
    for (const auto& [x, y1] : l.fwd) {
        Mask z1 = m.fwd.at(y1);
        out.fwd[x] = z1;
        for (Mask z : configs_within(m.b, parts.a2_events(z1)))
            out.bwd[{x, z}] = l.bwd.at({x, m.bwd.at({y1, z})});
    }
    return out;
}

bool dependent_lens_winning(const DependentLens& l, const WinningConditions& wa,
                            const WinningConditions& wb) {
    for (const auto& [in, g] : l.bwd)
        if (wa.contains(in.first | g) && !wb.contains(l.fwd.at(in.first) | in.second)) return false;
    return true;
}

Strategy retype(const Strategy& s, const EventStructure& a, const EventStructure& b,
                const std::vector<int>& game_map, const std::string& name) {
    auto g = arrow_game(a, b);
    const auto& h = s.game;
    if (static_cast<int>(game_map.size()) != h.size() || g.size() != h.size())
        throw Error("retype: game sizes differ");
    Mask hit = 0;
    for (int e = 0; e < h.size(); ++e) {
        int m = game_map[e];
        if (m < 0 || m >= g.size() || has(hit, m)) throw Error("retype: map is not a bijection");
        hit |= bit(m);
        if (g.pol(m) != h.pol(e)) throw Error("retype: polarity of " + h.id(e) + " changes");
    }
    for (int e = 0; e < h.size(); ++e)
        for (int d = 0; d < h.size(); ++d)
            if (h.leq(d, e) != g.leq(game_map[d], game_map[e])) throw Error("retype: causal order differs");
    auto image = [&](Mask c) {
        Mask o = 0;
        for_each_bit(c, [&](int e) { o |= bit(game_map[e]); });
        return o;
    };
    std::vector<Mask> hc, gc(g.conflicts().begin(), g.conflicts().end());
    for (Mask c : h.conflicts()) hc.push_back(image(c));
    std::sort(hc.begin(), hc.end());
    std::sort(gc.begin(), gc.end());
    if (hc != gc) throw Error("retype: conflicts differ");
    std::vector<int> label;
    for (int l : s.label) label.push_back(game_map[l]);
    return make_arrow(name.empty() ? s.name : name, s.carrier, a, b, label);
}

Strategy strategy_parallel(const Strategy& s, const Strategy& t) {
    require_arrow(s, "strategy_parallel");
    require_arrow(t, "strategy_parallel");
    int na = s.source().size(), nb = s.target().size();
    int nc = t.source().size();
    auto carrier = parallel(s.carrier, t.carrier);
    std::vector<int> label;
    for (int l : s.label) label.push_back(l < na ? l : na + nc + (l - na));
    for (int l : t.label) label.push_back(l < nc ? na + l : na + nc + nb + (l - nc));
    return make_arrow(s.name + "||" + t.name, carrier, parallel(s.source(), t.source()),
                      parallel(s.target(), t.target()), label);
}

Strategy swap_strategy(const EventStructure& p, const EventStructure& q) {
    auto pq = parallel(p, q);
    auto cc = copycat(pq);
    int n = pq.size(), np = p.size(), nq = q.size();
    std::vector<int> map;
    for (int i = 0; i < n; ++i) map.push_back(i);
    for (int i = 0; i < n; ++i) map.push_back(i < np ? n + nq + i : n + (i - np));
    return retype(cc, pq, parallel(q, p), map, "swap");
}

}  // namespace cg
