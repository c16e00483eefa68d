#include "cg/strategy.hpp"

#include <algorithm>
#include <unordered_map>

namespace cg {

const EventStructure& Strategy::source() const {
    if (!src) throw Error("strategy '" + name + "' is not between two games");
    return *src;
}

const EventStructure& Strategy::target() const {
    if (!tgt) throw Error("strategy '" + name + "' is not between two games");
    return *tgt;
}

Mask Strategy::image(Mask x) const {
    Mask y = 0;
    for_each_bit(x, [&](int e) { y |= bit(label[e]); });
    return y;
}

EventStructure arrow_game(const EventStructure& a, const EventStructure& b) {
    auto g = parallel(dual(a), b);
    g.name = a.name + "->" + b.name;
    return g;
}

Strategy make_strategy(std::string name, EventStructure carrier, EventStructure game,
                       std::vector<int> label) {
    if (static_cast<int>(label.size()) != carrier.size())
        throw Error("strategy '" + name + "': label size mismatch");
    for (int v : label)
        if (v < 0 || v >= game.size()) throw Error("strategy '" + name + "': label out of range");
    return {std::move(name), std::move(carrier), std::move(game), std::move(label), {}, {}};
}

Strategy make_arrow(std::string name, EventStructure carrier, const EventStructure& a,
                    const EventStructure& b, std::vector<int> label) {
    auto s = make_strategy(std::move(name), std::move(carrier), arrow_game(a, b), std::move(label));
    s.src = a;
    s.tgt = b;
    return s;
}

Strategy as_arrow(const Strategy& s, const EventStructure& a, const EventStructure& b) {
    auto g = arrow_game(a, b);
    if (!(g == s.game)) throw Error("as_arrow: game of '" + s.name + "' is not " + g.name);
    Strategy t = s;
    t.game = g;
    t.src = a;
    t.tgt = b;
    return t;
}

bool is_plus_maximal(const EventStructure& e, Mask x) {
    for (int a = 0; a < e.size(); ++a) {
        if (has(x, a) || e.pol(a) == Polarity::minus) continue;
        if (e.is_config(x | bit(a))) return false;
    }
    return true;
}

Report check_strategy(const Strategy& s, int cap) {
    Report r;
    if (static_cast<int>(s.label.size()) != s.carrier.size()) {
        r.add("total", "label does not cover the carrier");
        return r;
    }
    if (s.game.neutral() != 0) r.add("game", "game has neutral events");
    if (!validate_event_structure(s.carrier).ok()) {
        r.merge(validate_event_structure(s.carrier), "carrier: ");
        return r;
    }
    r.merge(check_map(s.as_map(), cap));
    if (!r.ok()) return r;

    auto xs = all_configurations(s.carrier, cap);
    auto ys = all_configurations(s.game, std::max(cap, s.game.size()));
    std::unordered_map<Mask, std::vector<Mask>> by_image;
    for (Mask x : xs) by_image[s.image(x)].push_back(x);
    bool reported = false;
    for (Mask x : xs) {
        Mask sx = s.image(x);
        for (Mask y : ys) {
            if (y == sx || !inc_minus(s.game, sx, y)) continue;
            int n = 0;
            auto it = by_image.find(y);
            if (it != by_image.end())
                for (Mask x2 : it->second) n += subset(x, x2);
            if (n != 1 && !reported) {
                r.add("receptive",
                      (n == 0 ? "no extension of x=" : "several extensions of x=") +
                          s.carrier.show(x) + " to y=" + s.game.show(y),
                      {x, y});
                reported = true;
            }
        }
        if (reported) break;
    }
    for (auto [a, b] : s.carrier.covers()) {
        if (s.carrier.pol(a) != Polarity::plus && s.carrier.pol(b) != Polarity::minus) continue;
        int ga = s.label[a], gb = s.label[b];
        if (!has(s.game.preds(gb), ga))
            r.add("innocent", s.carrier.id(a) + " -> " + s.carrier.id(b) +
                                  " is not an immediate dependency in the game", {}, {a, b});
    }
    return r;
}

Strategy copycat(const EventStructure& a) {
    auto game = arrow_game(a, a);
    int k = a.size();
    auto covers = game.covers();
    for (int i = 0; i < k; ++i) {
        // + event of A⊥∥A waits for its copy on the other side
        if (a.pol(i) == Polarity::plus) covers.emplace_back(i, i + k);
        else covers.emplace_back(i + k, i);
    }
    auto order = make_es("CC", game.ids(), game.polarities(), covers, {}, game.levels());
    std::vector<Mask> configs;
    for (Mask x : all_configurations(order, 2 * k))
        if (a.consistent(left_part(k, x)) && a.consistent(right_part(k, x))) configs.push_back(x);
    std::vector<Mask> down;
    for (int i = 0; i < 2 * k; ++i) down.push_back(order.down(i));
    auto carrier = from_order_and_configs("CC_" + a.name, game.ids(), game.polarities(), down,
                                          configs, a.has_levels() ? game.levels() : std::vector<int>{});
    std::vector<int> label(2 * k);
    for (int i = 0; i < 2 * k; ++i) label[i] = i;
    return make_arrow("cc_" + a.name, carrier, a, a, label);
}

bool is_deterministic(const Strategy& s, Mask* witness) {
    const auto& c = s.carrier;
    for (Mask m : c.conflicts()) {
        Mask negs = c.down(m) & c.neg();
        if (c.consistent(negs)) {
            if (witness) *witness = m;
            return false;
        }
    }
    return true;
}

Report check_two_cell(const TwoCell& f, const Strategy& s, const Strategy& t, bool rigid) {
    Report r;
    if (!(s.game == t.game)) {
        r.add("game", "strategies are in different games");
        return r;
    }
    if (static_cast<int>(f.fn.size()) != s.carrier.size()) {
        r.add("shape", "2-cell size mismatch");
        return r;
    }
    for (int e = 0; e < s.carrier.size(); ++e) {
        int v = f.fn[e];
        if (v < 0 || v >= t.carrier.size()) {
            r.add("total", "2-cell undefined on " + s.carrier.id(e), {}, {e});
            return r;
        }
        if (t.label[v] != s.label[e])
            r.add("commute", "sigma(" + s.carrier.id(e) + ") != sigma'(f(" + s.carrier.id(e) + "))",
                  {}, {e});
    }
    if (!r.ok()) return r;
    ESMap m{s.carrier, t.carrier, f.fn};
    r.merge(check_map(m, std::max(default_caps().events, s.carrier.size())));
    if (r.ok() && rigid && !is_rigid(m)) r.add("rigid", "2-cell does not preserve causality");
    return r;
}

std::vector<TwoCell> find_two_cells(const Strategy& s, const Strategy& t, bool rigid,
                                    std::size_t limit) {
    std::vector<TwoCell> out;
    if (!(s.game == t.game)) return out;
    int n = s.carrier.size();
    std::vector<std::vector<int>> cand(n);
    for (int e = 0; e < n; ++e)
        for (int v = 0; v < t.carrier.size(); ++v)
            if (t.label[v] == s.label[e] && t.carrier.pol(v) == s.carrier.pol(e))
                cand[e].push_back(v);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return count(s.carrier.down(a)) < count(s.carrier.down(b));
    });
    std::vector<int> fn(n, -1);
    auto img = [&](Mask x) {
        Mask y = 0;
        for_each_bit(x, [&](int e) { y |= bit(fn[e]); });
        return y;
    };
    // f[e] is fixed once its causes are: [e] must land on a configuration
    auto rec = [&](auto&& self, int k) -> void {
        if (out.size() >= limit) return;
        if (k == n) {
            TwoCell c{fn};
            if (check_two_cell(c, s, t, rigid).ok()) out.push_back(c);
            return;
        }
        int e = order[k];
        for (int v : cand[e]) {
            fn[e] = v;
            Mask d = s.carrier.down(e);
            Mask im = img(d);
            if (count(im) == count(d) && t.carrier.is_config(im) &&
                (!rigid || std::all_of(s.carrier.covers().begin(), s.carrier.covers().end(),
                                       [&](auto c) {
                                           return c.second != e ||
                                                  t.carrier.leq(fn[c.first], v);
                                       })))
                self(self, k + 1);
            fn[e] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

IsoResult strategies_isomorphic(const Strategy& s, const Strategy& t, int cap) {
    if (!(s.game == t.game)) return {};
    return find_iso(s.carrier, t.carrier, &s.label, &t.label, cap);
}

}  // namespace cg
