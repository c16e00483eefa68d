#include "cg/lifting.hpp"

#include <algorithm>

#include "cg/composition.hpp"

namespace cg {

Mask ConfigFunction::operator()(Mask x) const {
    auto it = table.find(x);
    if (it == table.end())
        throw Error("config function '" + name + "' undefined at " + source.show(x));
    return it->second;
}

std::vector<Mask> ConfigFunction::domain() const {
    std::vector<Mask> d;
    for (auto& [k, v] : table) d.push_back(k);
    std::sort(d.begin(), d.end(), config_order);
    return d;
}

ConfigFunction tabulate(std::string name, const EventStructure& source,
                        const EventStructure& target, const std::function<Mask(Mask)>& f) {
    ConfigFunction out{std::move(name), source, target, {}};
    for (Mask x : all_configurations(source)) out.table[x] = f(x);
    return out;
}

Report validate_cfun(const ConfigFunction& f) {
    Report r;
    auto cs = all_configurations(f.source);
    for (Mask x : cs)
        if (!f.table.count(x)) r.add("total", "no value at " + f.source.show(x), {x});
    for (auto& [x, y] : f.table) {
        if (!f.source.is_config(x)) r.add("domain", f.source.show(x) + " is not a configuration", {x});
        if (!f.target.is_config(y))
            r.add("codomain", "value " + f.target.show(y) + " is not a configuration", {x, y});
    }
    return r;
}

ConfigFunction identity_cfun(const EventStructure& a) {
    return tabulate("id_" + a.name, a, a, [](Mask x) { return x; });
}

ConfigFunction cfun_of_map(const ESMap& m) {
    return tabulate("map", m.source, m.target, [&](Mask x) { return m.image(x); });
}

ConfigFunction compose_cfun(const ConfigFunction& f, const ConfigFunction& g) {
    if (!(f.target == g.source)) throw Error("compose_cfun: '" + f.name + "' and '" + g.name + "' do not meet");
    ConfigFunction h{g.name + "." + f.name, f.source, g.target, {}};
    for (auto& [x, y] : f.table) h.table[x] = g(y);
    return h;
}

ConfigFunction dual_cfun(const ConfigFunction& f) {
    return {f.name + "^", dual(f.source), dual(f.target), f.table};
}

AffineStableReport check_affine_stable(const ConfigFunction& f) {
    AffineStableReport r;
    const auto& A = f.source;
    const auto& B = f.target;
    auto cs = f.domain();
    for (Mask x : cs)
        for (Mask y : cs) {
            if (x == y || !subset(x, y)) continue;
            if (r.polarity && inc_minus(A, x, y) && !inc_minus(B, f(x), f(y))) {
                r.polarity = false;
                r.witnesses.add("polarity", A.show(x) + " -sub " + A.show(y), {x, y});
            }
            if (r.polarity && inc_plus(A, x, y) && !inc_plus(B, f(x), f(y))) {
                r.polarity = false;
                r.witnesses.add("polarity", A.show(x) + " +sub " + A.show(y), {x, y});
            }
        }
    if (!inc_plus(B, 0, f(0))) {
        r.affine = false;
        r.witnesses.add("affine", "empty family: f(empty) = " + B.show(f(0)), {0});
    }
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            Mask x1 = cs[i], x2 = cs[j];
            if (!A.is_config(x1 | x2)) continue;
            Mask u = f(x1) | f(x2);
            if (r.affine && !(B.is_config(u) && inc_plus(B, u, f(x1 | x2)))) {
                r.affine = false;
                r.witnesses.add("affine", "pair " + A.show(x1) + ", " + A.show(x2), {x1, x2});
            }
            if (r.stable && !inc_minus(B, f(x1 & x2), f(x1) & f(x2))) {
                r.stable = false;
                r.witnesses.add("stable", "pair " + A.show(x1) + ", " + A.show(x2), {x1, x2});
            }
        }
    return r;
}

Report check_additive_stable(const ConfigFunction& f) {
    Report r;
    const auto& A = f.source;
    const auto& B = f.target;
    auto cs = f.domain();
    for (Mask x : cs)
        for (Mask y : cs) {
            if (x == y || !subset(x, y)) continue;
            if ((inc_minus(A, x, y) && !inc_minus(B, f(x), f(y))) ||
                (inc_plus(A, x, y) && !inc_plus(B, f(x), f(y)))) {
                r.add("polarity", A.show(x) + " sub " + A.show(y), {x, y});
                goto additive;
            }
        }
additive:
    if (f(0) != 0) r.add("additive", "f(empty) = " + B.show(f(0)), {0});
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            Mask x1 = cs[i], x2 = cs[j];
            if (!A.is_config(x1 | x2)) continue;
            if (!r.has("additive") && (f(x1) | f(x2)) != f(x1 | x2))
                r.add("additive", "pair " + A.show(x1) + ", " + A.show(x2), {x1, x2});
            if (!r.has("stable") && (f(x1) & f(x2)) != f(x1 & x2))
                r.add("stable", "pair " + A.show(x1) + ", " + A.show(x2), {x1, x2});
        }
    return r;
}

bool reflects_minus_compatibility(const ConfigFunction& f) {
    const auto& A = f.source;
    auto cs = f.domain();
    for (Mask x : cs)
        for (Mask x1 : cs) {
            if (!inc_minus(A, x, x1)) continue;
            for (Mask x2 : cs)
                if (inc_minus(A, x, x2) && f.target.is_config(f(x1) | f(x2)) &&
                    !A.is_config(x1 | x2))
                    return false;
        }
    return true;
}

StableFamily lift_family(const ConfigFunction& f) {
    auto game = arrow_game(f.source, f.target);
    int k = f.source.size();
    auto ys = all_configurations(f.target);
    std::vector<Mask> configs;
    for (Mask x : f.domain())
        for (Mask y : ys)
            if (scott_leq(f.target, y, f(x))) configs.push_back(join(k, x, y));
    return make_family(f.name + "!", game.ids(), configs, game.polarities(), game.levels());
}

StableFamily colift_family(const ConfigFunction& g) {
    auto game = arrow_game(g.target, g.source);
    int k = g.target.size();
    auto ys = all_configurations(g.target);
    std::vector<Mask> configs;
    for (Mask x : g.domain())
        for (Mask y : ys)
            if (scott_leq(g.target, g(x), y)) configs.push_back(join(k, y, x));
    return make_family(g.name + "*", game.ids(), configs, game.polarities(), game.levels());
}

Strategy strategy_of_family(const StableFamily& f, const EventStructure& a,
                            const EventStructure& b, const std::string& name) {
    auto p = pr(f);
    p.es.name = name;
    return make_arrow(name, p.es, a, b, p.top);
}

Strategy lift(const ConfigFunction& f) {
    auto rep = check_affine_stable(f);
    if (!rep.ok()) throw Refused("lift: '" + f.name + "' is not affine-stable: " + rep.witnesses.str());
    auto fam = lift_family(f);
    auto v = validate_family(fam);
    if (!v.ok()) throw Refused("lift: family of '" + f.name + "' is not stable: " + v.str());
    return strategy_of_family(fam, f.source, f.target, f.name + "!");
}

Strategy colift(const ConfigFunction& g) {
    auto rep = check_affine_stable(dual_cfun(g));
    if (!rep.ok())
        throw Refused("colift: '" + g.name + "' is not affine-stable between the duals: " +
                      rep.witnesses.str());
    auto fam = colift_family(g);
    auto v = validate_family(fam);
    if (!v.ok()) throw Refused("colift: family of '" + g.name + "' is not stable: " + v.str());
    return strategy_of_family(fam, g.target, g.source, g.name + "*");
}

ConfigFunction projector(const EventStructure& a, const EventStructure& b) {
    int k = a.size();
    return tabulate("proj", parallel(a, b), b, [k](Mask x) { return right_part(k, x); });
}

ConfigFunction left_projector(const EventStructure& a, const EventStructure& b) {
    int k = a.size();
    return tabulate("lproj", parallel(a, b), a, [k](Mask x) { return left_part(k, x); });
}

ConfigFunction duplicator(const EventStructure& a) {
    int k = a.size();
    return tabulate("dup", a, parallel(a, a), [k](Mask x) { return join(k, x, x); });
}

EventStructure split_game(const EventStructure& a) {
    auto g = parallel(hide(a, a.pos()), hide(a, a.neg()));
    g.name = a.name + "+-";
    return g;
}

ConfigFunction split_cfun(const EventStructure& a) {
    auto g = split_game(a);
    int k = count(a.pos());
    auto pos = members(a.pos()), neg = members(a.neg());
    return tabulate("split_" + a.name, a, g, [&](Mask x) {
        Mask y = 0;
        for (int i = 0; i < k; ++i)
            if (has(x, pos[i])) y |= bit(i);
        for (int i = 0; i < static_cast<int>(neg.size()); ++i)
            if (has(x, neg[i])) y |= bit(k + i);
        return y;
    });
}

EventStructure detector_game() { return make_es("det", {"⊞"}, {Polarity::plus}, {}, {}); }
EventStructure blocker_game() { return make_es("blk", {"⊟"}, {Polarity::minus}, {}, {}); }

ConfigFunction detector(const EventStructure& a, const std::vector<Mask>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!a.consistent(xs[i])) throw Error("detector: " + a.show(xs[i]) + " is not consistent");
        if (!subset(xs[i], a.pos())) throw Error("detector: " + a.show(xs[i]) + " has Opponent moves");
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (a.consistent(xs[i] | xs[j]))
                throw Error("detector: " + a.show(xs[i]) + " and " + a.show(xs[j]) + " are consistent");
    }
    return tabulate("det", a, detector_game(), [&](Mask x) {
        return std::any_of(xs.begin(), xs.end(), [&](Mask m) { return subset(m, x); }) ? Mask{1}
                                                                                      : Mask{0};
    });
}

ConfigFunction blocker(const EventStructure& a, Mask y) {
    if (!subset(y, a.neg())) throw Error("blocker: " + a.show(y) + " has Player moves");
    return tabulate("blk", a, blocker_game(), [y](Mask x) { return (x & y) ? Mask{1} : Mask{0}; });
}

FunctorialityReport check_functoriality(const ConfigFunction& f, const ConfigFunction& g,
                                        int iso_cap) {
    FunctorialityReport r;
    auto gf = compose_cfun(f, g);
    auto rel = relational_compose(lift_family(f), lift_family(g));
    auto direct = lift_family(gf);
    r.families_equal = rel.ids == direct.ids && rel.configs == direct.configs;
    auto comp = compose(lift(f), lift(g));
    r.composite_iso = strategies_isomorphic(comp, lift(gf), iso_cap);
    return r;
}

StableFamily copycat_family(const EventStructure& a) {
    auto game = arrow_game(a, a);
    int k = a.size();
    auto cs = all_configurations(a);
    std::vector<Mask> configs;
    for (Mask x : cs)
        for (Mask y : cs)
            if (scott_leq(a, y, x)) configs.push_back(join(k, x, y));
    return make_family("C_" + a.name, game.ids(), configs, game.polarities(), game.levels());
}

namespace {

bool included(const StableFamily& a, const StableFamily& b) {
    return a.ids == b.ids && std::all_of(a.configs.begin(), a.configs.end(),
                                         [&](Mask x) { return b.contains(x); });
}

bool same(const StableFamily& a, const StableFamily& b) {
    return a.ids == b.ids && a.configs == b.configs;
}

}  // namespace

AdjunctionReport adjunction_check(const ConfigFunction& f) {
    auto add = check_additive_stable(f);
    if (!add.ok()) throw Refused("adjunction: '" + f.name + "' is not additive-stable: " + add.str());
    AdjunctionReport r;
    auto fl = lift_family(f);      // over A⊥∥B
    auto fs = colift_family(f);    // over B⊥∥A
    auto ca = copycat_family(f.source);
    auto cb = copycat_family(f.target);
    auto fs_fl = relational_compose(fl, fs);  // F*∘F_! over A⊥∥A
    auto fl_fs = relational_compose(fs, fl);  // F_!∘F* over B⊥∥B
    r.unit = included(ca, fs_fl);
    r.counit = included(fl_fs, cb);
    if (!r.unit) r.witnesses.add("unit", "C_A is not included in F*.F!");
    if (!r.counit) r.witnesses.add("counit", "F!.F* is not included in C_B");

    auto l1 = relational_compose(fs, ca);
    auto m1 = relational_compose(fs, fs_fl);
    auto r1 = relational_compose(cb, fs);
    r.triangle1 = included(l1, m1) && included(m1, r1) && same(l1, r1);
    if (!r.triangle1) r.witnesses.add("triangle", "C_A.F* differs from F*.C_B");

    auto l2 = relational_compose(ca, fl);
    auto m2 = relational_compose(fs_fl, fl);
    auto r2 = relational_compose(fl, cb);
    r.triangle2 = included(l2, m2) && included(m2, r2) && same(l2, r2);
    if (!r.triangle2) r.witnesses.add("triangle", "F!.C_A differs from C_B.F!");
    return r;
}

}  // namespace cg
