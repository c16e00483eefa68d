#include "cg/optics.hpp"

#include <map>

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

Mask compress(Mask global, Mask visible) {
    Mask out = 0;
    int i = 0;
    for_each_bit(visible, [&](int e) {
        if (has(global, e)) out |= bit(i);
        ++i;
    });
    return out;
}

int rank_in(Mask m, int e) { return count(m & low_bits(e)); }

int nth_bit(Mask m, int k) {
    int found = -1;
    for_each_bit(m, [&](int e) {
        if (k-- == 0) found = e;
    });
    return found;
}

int event_of_prime(const PrResult& p, Mask prime_set) {
    for (std::size_t k = 0; k < p.primes.size(); ++k)
        if (p.primes[k] == prime_set) return static_cast<int>(k);
    throw Error("no event of Pr for the prime " + std::to_string(prime_set));
}

EventStructure empty_game(const std::string& name) { return make_es(name, {}, {}, {}, {}); }

// arrow_game(A, B) index ↦ arrow_game(A1∥B2⊥, B1∥A2⊥) index
std::vector<int> player_form_map(const EventStructure& a, const EventStructure& b) {
    int n1a = count(a.pos()), n2b = count(b.neg()), n1b = count(b.pos());
    std::vector<int> m;
    for (int e = 0; e < a.size(); ++e)
        m.push_back(a.pol(e) == Polarity::plus ? rank_in(a.pos(), e) : n1a + n2b + n1b + rank_in(a.neg(), e));
    for (int e = 0; e < b.size(); ++e)
        m.push_back(b.pol(e) == Polarity::plus ? n1a + n2b + rank_in(b.pos(), e) : n1a + rank_in(b.neg(), e));
    return m;
}

// s : X∥Y → P∥C with P outputs demanding only X  ↦  X → P∥[Y ⊸ C]
Strategy curry_impl(const Strategy& s, const EventStructure& x, const EventStructure* p,
                    const FunctionSpace& space, const std::string& name) {
    auto sp = extract_stable_span(s);
    int nx = x.size();
    int np = p ? p->size() : 0;
    const auto& fam = space.space.family;
    StableSpan out;
    out.name = name;
    out.a = x;
    out.b = p ? parallel(*p, space.es()) : space.es();
    out.vertex = sp.vertex;
    for (int e = 0; e < sp.vertex.size(); ++e) {
        Mask dx = sp.dem[e] & low_bits(nx);
        if (sp.out[e] < np) {
            if (right_part(nx, sp.dem[e]))
                throw Refused("'" + s.name + "': output " + sp.b.id(sp.out[e]) + " depends on the second argument");
            out.out.push_back(sp.out[e]);
            out.dem.push_back(dx);
            continue;
        }
        Mask f = 0;
        for_each_bit(sp.vertex.down(e), [&](int d) {
            if (sp.out[d] < np) return;
            int el = space.space.element(right_part(nx, sp.dem[d]), sp.out[d] - np);
            if (el < 0) throw Error("curry: no function-space element for " + sp.vertex.id(d));
            f |= bit(el);
        });
        if (!fam.contains(f)) throw Error("curry: history of " + sp.vertex.id(e) + " leaves the function space");
        int top = space.space.element(right_part(nx, sp.dem[e]), sp.out[e] - np);
        out.out.push_back(np + event_of_prime(space.pr, prime(fam, top, f)));
        out.dem.push_back(dx);
    }
    return strategy_of_span(out);
}

std::vector<Mask> b2_configs(const ContainerParts& pb, Mask y) {
    std::vector<Mask> out;
    Mask ev = pb.a2_events(y);
    for (Mask v : all_configurations(pb.a2(y))) out.push_back(expand(v, ev));
    return out;
}

}  // namespace

Sides sides(const EventStructure& a) {
    Sides s{hide(a, a.pos()), hide(a, a.neg())};
    s.p.name = a.name + "1";
    s.n.name = a.name + "2";
    return s;
}

Strategy to_player_form(const Strategy& s) {
    if (!s.is_arrow()) throw Error("to_player_form needs a strategy between games");
    const auto& a = s.source();
    const auto& b = s.target();
    auto sa = sides(a), sb = sides(b);
    try {
        return retype(s, parallel(sa.p, dual(sb.n)), parallel(sb.p, dual(sa.n)), player_form_map(a, b));
    } catch (const Refused&) {
        throw;
    } catch (const Error& e) {
        throw Refused("'" + s.name + "' is not between games that split into parts: " + e.what());
    }
}

Strategy from_player_form(const Strategy& s, const EventStructure& a, const EventStructure& b) {
    auto m = player_form_map(a, b);
    std::vector<int> inv(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) inv[m[i]] = static_cast<int>(i);
    return retype(s, a, b, inv);
}

Strategy reassociate(const Strategy& s, const EventStructure& a, const EventStructure& b) {
    std::vector<int> id(s.game.size());
    for (int i = 0; i < s.game.size(); ++i) id[i] = i;
    return retype(s, a, b, id);
}

Report validate_presentation(const Presentation& p) {
    Report r;
    auto sa = sides(p.a), sb = sides(p.b);
    if (!is_purely_player(p.q)) r.add("residual", "residual '" + p.q.name + "' is not purely Player");
    if (!p.f.is_arrow() || !(p.f.source() == sa.p) || !(p.f.target() == parallel(sb.p, p.q)))
        r.add("forward", "forward part is not A1 -> B1||Q");
    if (!p.g.is_arrow() || !(p.g.source() == parallel(p.q, dual(sb.n))) || !(p.g.target() == dual(sa.n)))
        r.add("backward", "backward part is not Q||B2* -> A2*");
    if (r.ok()) {
        r.merge(check_strategy(p.f), "forward: ");
        r.merge(check_strategy(p.g), "backward: ");
    }
    return r;
}

Strategy optic_of_presentation(const Presentation& p) {
    auto v = validate_presentation(p);
    if (!v.ok()) throw Error("invalid presentation: " + v.str());
    auto sa = sides(p.a), sb = sides(p.b);
    auto b2d = dual(sb.n);
    auto first = reassociate(strategy_parallel(p.f, copycat(b2d)), parallel(sa.p, b2d),
                             parallel(sb.p, parallel(p.q, b2d)));
    auto second = strategy_parallel(copycat(sb.p), p.g);
    auto s = from_player_form(compose(first, second), p.a, p.b);
    s.name = "optic";
    return s;
}

Presentation identity_presentation(const EventStructure& a) {
    auto sa = sides(a);
    auto q = empty_game("I");
    auto a2d = dual(sa.n);
    return {a, a, q, reassociate(copycat(sa.p), sa.p, parallel(sa.p, q)),
            reassociate(copycat(a2d), parallel(q, a2d), a2d)};
}

Presentation compose_presentations(const Presentation& p, const Presentation& q) {
    if (!(p.b == q.a)) throw Error("presentations do not meet: '" + p.b.name + "' vs '" + q.a.name + "'");
    auto sa = sides(p.a), sc = sides(q.b);
    const auto& Q = p.q;
    const auto& P = q.q;
    auto c2d = dual(sc.n);
    auto f = reassociate(compose(p.f, strategy_parallel(q.f, copycat(Q))), sa.p,
                         parallel(sc.p, parallel(P, Q)));
    // precomposing with the swap P||Q -> Q||P only moves source events
    auto x = strategy_parallel(copycat(Q), q.g);
    int nq = Q.size(), np = P.size();
    std::vector<int> map(x.game.size());
    for (int i = 0; i < x.game.size(); ++i)
        map[i] = i < nq ? np + i : i < nq + np ? i - nq : i;
    auto g = compose(retype(x, parallel(parallel(P, Q), c2d), x.target(), map), p.g);
    return {p.a, q.b, parallel(P, Q), f, g};
}

Report presentations_equivalent(const Presentation& p, const Presentation& p2, const Strategy& f) {
    Report r;
    if (!(p.a == p2.a) || !(p.b == p2.b) || !f.is_arrow() || !(f.source() == p.q) || !(f.target() == p2.q)) {
        r.add("endpoints", "presentations or witness do not share endpoints");
        return r;
    }
    auto sb = sides(p.b);
    auto fwd = compose(p.f, strategy_parallel(copycat(sb.p), f));
    if (!strategies_isomorphic(fwd, p2.f)) r.add("forward", "F' is not (B1||f) after F");
    auto bwd = compose(strategy_parallel(f, copycat(dual(sb.n))), p2.g);
    if (!strategies_isomorphic(bwd, p.g)) r.add("backward", "G' after (f||B2) is not G");
    if (r.ok() && !strategies_isomorphic(optic_of_presentation(p), optic_of_presentation(p2)))
        r.add("optic", "equivalent presentations give different optics");
    return r;
}

Strategy curry(const Strategy& s, const EventStructure& x, const EventStructure& y, const FunctionSpace& space) {
    if (!s.is_arrow() || !(s.source() == parallel(x, y)))
        throw Error("curry: '" + s.name + "' is not a strategy from X||Y");
    return curry_impl(s, x, nullptr, space, "curry " + s.name);
}

Strategy apply_strategy(const FunctionSpace& space, const EventStructure& y, const EventStructure& c) {
    const auto& q = space.es();
    int nq = q.size();
    auto f = tabulate("apply", parallel(q, y), c, [&](Mask m) {
        return output_of(space.space, space.pr.theta(left_part(nq, m)), right_part(nq, m));
    });
    auto s = lift(f);
    s.name = "apply";
    return s;
}

Presentation canonical_presentation(const Strategy& s, const Caps& caps) {
    if (!s.is_arrow()) throw Error("canonical_presentation needs a strategy between games");
    auto order = numeric_order({1, 2});
    for (const auto* g : {&s.source(), &s.target()})
        if (!is_dialectica(*g, order)) throw Refused("'" + g->name + "' is not a dialectica game");
    auto sa = sides(s.source()), sb = sides(s.target());
    auto b2d = dual(sb.n), a2d = dual(sa.n);
    auto space = span_function_space(b2d, a2d, caps);
    auto s1 = to_player_form(s);
    auto f = curry_impl(s1, sa.p, &sb.p, space, s.name + "+");
    return {s.source(), s.target(), space.es(), f, apply_strategy(space, b2d, a2d)};
}

int DOp::ambient_index(int b_event) const {
    for (std::size_t j = 0; j < ambient.size(); ++j)
        if (ambient[j].b == b_event) return static_cast<int>(j);
    return -1;
}

int DOp::ambient_index(Mask y, int a_event) const {
    for (std::size_t j = 0; j < ambient.size(); ++j)
        if (ambient[j].b < 0 && ambient[j].y == y && ambient[j].a == a_event) return static_cast<int>(j);
    return -1;
}

Mask DOp::element_x(int element) const { return expand(space.space.elements[element].x, a.pos()); }

Mask DOp::position(int e) const {
    Mask pa = 0, pb = 0;
    for_each_bit(space.pr.primes[e], [&](int el) {
        pa |= element_x(el);
        const auto& amb = ambient[space.space.elements[el].b];
        if (amb.b >= 0) {
            pb |= b.down(amb.b);
        } else {
            pa |= a.down(amb.a);
            pb |= b.down(amb.y);
        }
    });
    return pa | (pb << a.size());
}

int DOp::move(int e) const {
    const auto& amb = ambient[space.space.elements[space.pr.top[e]].b];
    return amb.b >= 0 ? a.size() + amb.b : amb.a;
}

DOp dop_family(const EventStructure& a, const EventStructure& b, const Caps& caps) {
    for (const auto* g : {&a, &b}) {
        if (!is_container(*g)) throw Refused("'" + g->name + "' is not a container game");
        if (g->size() > caps.fspace)
            throw CapExceeded("dOp of '" + a.name + "' and '" + b.name + "' exceeds the cap of " +
                              std::to_string(caps.fspace) + " events");
    }
    auto pa = container_parts(a), pb = container_parts(b);
    DOp d{a, b, {}, {}, {}};
    std::vector<std::string> ids;
    for_each_bit(b.pos(), [&](int e) {
        d.ambient.push_back({e, 0, -1});
        ids.push_back(b.id(e));
    });
    auto b1 = all_configurations(pb.a1);
    std::set<Mask, decltype(&config_order)> ys(&config_order);
    for (Mask y : b1)
        for (Mask v : b2_configs(pb, expand(y, b.pos()))) ys.insert(v);
    for (Mask y : ys)
        for_each_bit(a.neg(), [&](int e) {
            d.ambient.push_back({-1, y, e});
            ids.push_back(b.show(y) + ">" + a.id(e));
        });
    if (d.ambient.size() > static_cast<std::size_t>(max_events))
        throw CapExceeded("dOp of '" + a.name + "' and '" + b.name + "' has too many elements");
    FamilyFunctor fn{family_of(pa.a1), ids, {}, {}};
    for (Mask x : fn.base.configs) {
        Mask xa = expand(x, a.pos());
        Mask a2ev = pa.a2_events(xa);
        auto a2fam = family_of(pa.a2(xa));
        std::unordered_set<Mask> members;
        Mask events = 0;
        for (Mask y : b1) {
            Mask yb = expand(y, b.pos());
            Mask b2ev = pb.a2_events(yb);
            auto inner = span_space_family(family_of(pb.a2(yb)), a2fam);
            Mask base = 0;
            for_each_bit(yb, [&](int e) { base |= bit(d.ambient_index(e)); });
            for (Mask f : inner.family.configs) {
                Mask m = base;
                for_each_bit(f, [&](int el) {
                    const auto& fe = inner.elements[el];
                    m |= bit(d.ambient_index(expand(fe.x, b2ev), nth_bit(a2ev, fe.b)));
                });
                members.insert(m);
                events |= m;
            }
        }
        fn.events.push_back(events);
        fn.members.push_back(std::move(members));
    }
    d.functor = fn;
    d.space = span_dependent_product(fn);
    d.space.pr.es.name = "dOp[" + a.name + "," + b.name + "]";
    return d;
}

Strategy strategy_of_position(const std::string& name, const EventStructure& plus,
                              const std::vector<Mask>& position, const std::vector<int>& move,
                              const EventStructure& a, const EventStructure& b) {
    auto g = arrow_game(a, b);
    Mask gneg = g.neg();
    int np = plus.size();
    if (np + count(gneg) > max_events) throw CapExceeded("'" + name + "' has too many events");
    std::vector<std::string> ids(plus.ids());
    std::vector<Polarity> pol(np, Polarity::plus);
    std::vector<int> negs;
    for_each_bit(gneg, [&](int e) {
        negs.push_back(e);
        ids.push_back(g.id(e));
        pol.push_back(Polarity::minus);
    });
    auto gconfigs = all_configurations(g);
    std::vector<Mask> members;
    for (Mask z : all_configurations(plus)) {
        Mask d = 0;
        for_each_bit(z, [&](int s) { d |= position[s]; });
        if (!g.is_config(d)) throw Error("'" + name + "': position of " + plus.show(z) + " is not a configuration");
        for (Mask w : gconfigs)
            if (subset(d, w) && (w & g.pos()) == (d & g.pos())) members.push_back(z | (compress(w, gneg) << np));
    }
    auto fam = make_family(name, ids, members, pol);
    auto p = pr(fam);
    p.es.name = name;
    std::vector<int> label;
    for (int t : p.top) label.push_back(t < np ? move[t] : negs[t - np]);
    return make_arrow(name, p.es, a, b, label);
}

Strategy do_strategy(const DOp& d) {
    std::vector<Mask> pos;
    std::vector<int> mv;
    for (int e = 0; e < d.es().size(); ++e) {
        pos.push_back(d.position(e));
        mv.push_back(d.move(e));
    }
    return strategy_of_position("do[" + d.a.name + "," + d.b.name + "]", d.es(), pos, mv, d.a, d.b);
}

SigmaPlus sigma_plus(const Strategy& s, const DOp& d) {
    if (!s.is_arrow() || !(s.source() == d.a) || !(s.target() == d.b))
        throw Error("sigma_plus: '" + s.name + "' is not between the games of the dOp");
    const auto& c = s.carrier;
    int na = d.a.size();
    SigmaPlus out{hide(c, c.pos()), {}, hidden_index(c.pos())};
    const auto& fam = d.space.space.family;
    std::vector<int> elem;
    for (int i : out.of) {
        Mask hist = s.image(c.down(i));
        Mask xa = left_part(na, hist) & d.a.pos();
        Mask yb = right_part(na, hist) & d.b.neg();
        int m = s.label[i];
        int j;
        if (m >= na) {
            if (yb) throw Refused("'" + s.name + "': " + c.id(i) + " depends on Opponent moves of " + d.b.name);
            j = d.ambient_index(m - na);
        } else {
            j = d.ambient_index(yb, m);
        }
        int el = j < 0 ? -1 : d.space.space.element(compress(xa, d.a.pos()), j);
        if (el < 0) throw Refused("'" + s.name + "': no element of dOp for " + c.id(i));
        elem.push_back(el);
    }
    for (int i = 0; i < out.plus.size(); ++i) {
        Mask f = 0;
        for_each_bit(out.plus.down(i), [&](int k) { f |= bit(elem[k]); });
        if (!fam.contains(f)) throw Refused("'" + s.name + "': history of " + out.plus.id(i) + " leaves dOp");
        out.event.push_back(event_of_prime(d.space.pr, prime(fam, elem[i], f)));
    }
    return out;
}

bool check_triangle(const Strategy& s, const DOp& d, const SigmaPlus& sp) {
    for (int i = 0; i < sp.plus.size(); ++i)
        if (d.position(sp.event[i]) != s.image(s.carrier.down(sp.of[i]))) return false;
    return true;
}

std::set<OpticValue> optic_values(const DOp& d, const SigmaPlus& sp, Mask x) {
    auto pb = container_parts(d.b);
    std::set<OpticValue> out;
    for (Mask w : all_configurations(sp.plus)) {
        Mask z = 0;
        for_each_bit(w, [&](int i) { z |= bit(sp.event[i]); });
        Mask m = d.space.pr.theta(z);
        OpticValue v{0, {}};
        std::vector<std::pair<Mask, int>> pairs;
        for_each_bit(m, [&](int el) {
            if (!subset(d.element_x(el), x)) return;
            const auto& amb = d.ambient[d.space.space.elements[el].b];
            if (amb.b >= 0)
                v.y |= bit(amb.b);
            else
                pairs.emplace_back(amb.y, amb.a);
        });
        for (Mask y2 : b2_configs(pb, v.y)) {
            Mask o = 0;
            for (auto [y, a] : pairs)
                if (subset(y, y2)) o |= bit(a);
            v.table.emplace_back(y2, o);
        }
        out.insert(v);
    }
    return out;
}

std::set<OpticValue> let_values(const DOp& f, const SigmaPlus& fs, const DOp& g, const SigmaPlus& gs, Mask x) {
    std::set<OpticValue> out;
    for (const auto& fv : optic_values(f, fs, x)) {
        std::map<Mask, Mask> ft(fv.table.begin(), fv.table.end());
        for (const auto& gv : optic_values(g, gs, fv.y)) {
            OpticValue v{gv.y, {}};
            for (auto [z2, b2] : gv.table) {
                auto it = ft.find(b2);
                if (it == ft.end()) throw Error("let: " + f.b.show(b2) + " is not a configuration of B2(y)");
                v.table.emplace_back(z2, it->second);
            }
            out.insert(v);
        }
    }
    return out;
}

}  // namespace cg
