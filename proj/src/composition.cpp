#include "cg/composition.hpp"

#include <unordered_map>
#include <unordered_set>

namespace cg {

namespace {

struct Node {
    int s, t;
};

void enforce_cap(const EventStructure& e, int cap) {
    if (cap < 0) cap = default_caps().events;
    if (e.size() > cap)
        throw CapExceeded("configuration enumeration of '" + e.name + "' (" + std::to_string(e.size()) +
                          " events, cap " + std::to_string(cap) + "; up to 2^" + std::to_string(e.size()) +
                          " configurations)");
}

// Grows matched pairs one node at a time; every secured pair has a securing order, so each is reached.
std::vector<Mask> secured_configs(const std::vector<Node>& universe, const EventStructure& S,
                                  const EventStructure& T) {
    int n = static_cast<int>(universe.size());
    std::vector<Mask> sdown(n, 0), tdown(n, 0);
    for (int i = 0; i < n; ++i) {
        auto [s, t] = universe[i];
        if (s >= 0) sdown[i] = S.down(s) & ~bit(s);
        if (t >= 0) tdown[i] = T.down(t) & ~bit(t);
    }
    struct State {
        Mask z, x, y;
    };
    std::vector<State> todo{{0, 0, 0}};
    std::unordered_set<Mask> seen{0};
    std::vector<Mask> out;
    while (!todo.empty()) {
        auto [z, x, y] = todo.back();
        todo.pop_back();
        out.push_back(z);
        for (int i = 0; i < n; ++i) {
            if (has(z, i)) continue;
            auto [s, t] = universe[i];
            Mask nx = x, ny = y;
            if (s >= 0) {
                if (has(x, s) || !subset(sdown[i], x) || !S.consistent(x | bit(s))) continue;
                nx |= bit(s);
            }
            if (t >= 0) {
                if (has(y, t) || !subset(tdown[i], y) || !T.consistent(y | bit(t))) continue;
                ny |= bit(t);
            }
            Mask nz = z | bit(i);
            if (seen.insert(nz).second) todo.push_back({nz, nx, ny});
        }
    }
    return out;
}

// Names each event after its game image, "#k" on repeats.
EventStructure name_by_image(const EventStructure& e, const EventStructure& game,
                             const std::vector<int>& label, const std::string& name) {
    std::vector<std::string> ids;
    std::unordered_map<int, int> seen;
    for (int i = 0; i < e.size(); ++i) {
        int k = ++seen[label[i]];
        const auto& base = game.id(label[i]);
        ids.push_back(k == 1 ? base : base + "#" + std::to_string(k));
    }
    return rename(e, ids, name);
}

}  // namespace

Pullback pullback(const ESMap& sigma, const ESMap& tau, int cap) {
    if (!sigma.total() || !tau.total()) throw Refused("pullback needs total maps");
    if (!(sigma.target == tau.target)) throw Error("pullback: maps into different targets");
    const auto& S = sigma.source;
    const auto& T = tau.source;
    std::vector<Node> universe;
    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    for (int s = 0; s < S.size(); ++s)
        for (int t = 0; t < T.size(); ++t)
            if (sigma.fn[s] == tau.fn[t]) {
                universe.push_back({s, t});
                ids.push_back(S.id(s) + "|" + T.id(t));
                pol.push_back(S.pol(s));
            }
    if (universe.size() > static_cast<std::size_t>(max_events))
        throw CapExceeded("pullback has more than 64 candidate pairs");
    enforce_cap(T, cap);
    enforce_cap(S, cap);
    auto configs = secured_configs(universe, S, T);
    Pullback out{{}, {}, {}, make_family("P", ids, configs, pol)};
    auto p = pr(out.family);
    out.es = p.es;
    out.pi1 = {p.es, S, {}};
    out.pi2 = {p.es, T, {}};
    for (int e : p.top) {
        out.pi1.fn.push_back(universe[e].s);
        out.pi2.fn.push_back(universe[e].t);
    }
    return out;
}

Mask Interaction::x_of(Mask z) const {
    Mask x = 0;
    for_each_bit(z, [&](int e) {
        if (left[e] >= 0) x |= bit(left[e]);
    });
    return x;
}

Mask Interaction::y_of(Mask z) const {
    Mask y = 0;
    for_each_bit(z, [&](int e) {
        if (right[e] >= 0) y |= bit(right[e]);
    });
    return y;
}

Interaction interaction(const Strategy& sigma, const Strategy& tau, int cap) {
    if (!sigma.is_arrow() || !tau.is_arrow()) throw Error("interaction needs strategies between games");
    if (!(sigma.target() == tau.source()))
        throw Error("interaction: middle games differ (" + sigma.target().name + " vs " +
                    tau.source().name + ")");
    const auto& A = sigma.source();
    const auto& B = sigma.target();
    const auto& C = tau.target();
    const auto& S = sigma.carrier;
    const auto& T = tau.carrier;
    int na = A.size(), nb = B.size();

    auto b0 = B;
    {
        std::vector<Polarity> z(nb, Polarity::neutral);
        b0 = make_es(B.name, B.ids(), z, B.covers(), B.conflicts(), B.levels());
    }
    auto game = parallel(parallel(dual(A), b0, "L.", "M."), C, "", "R.");

    std::vector<Node> universe;
    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    std::vector<int> gl;
    for (int s = 0; s < S.size(); ++s)
        if (sigma.label[s] < na) {
            universe.push_back({s, -1});
            gl.push_back(sigma.label[s]);
        }
    for (int s = 0; s < S.size(); ++s) {
        if (sigma.label[s] < na) continue;
        for (int t = 0; t < T.size(); ++t)
            if (tau.label[t] < nb && tau.label[t] == sigma.label[s] - na) {
                universe.push_back({s, t});
                gl.push_back(na + tau.label[t]);
            }
    }
    for (int t = 0; t < T.size(); ++t)
        if (tau.label[t] >= nb) {
            universe.push_back({-1, t});
            gl.push_back(na + tau.label[t]);
        }
    if (universe.size() > static_cast<std::size_t>(max_events))
        throw CapExceeded("interaction of '" + sigma.name + "' and '" + tau.name +
                          "' has more than 64 candidate events");
    for (std::size_t i = 0; i < universe.size(); ++i) {
        ids.push_back("e" + std::to_string(i));
        pol.push_back(game.pol(gl[i]));
    }

    enforce_cap(T, cap);
    enforce_cap(S, cap);
    auto configs = secured_configs(universe, S, T);
    auto fam = make_family("I", ids, configs, pol);
    auto p = pr(fam);
    Interaction out;
    out.game = game;
    for (int e : p.top) {
        out.label.push_back(gl[e]);
        out.left.push_back(universe[e].s);
        out.right.push_back(universe[e].t);
    }
    out.es = name_by_image(p.es, game, out.label, tau.name + "*" + sigma.name);
    return out;
}

Composite compose_full(const Strategy& sigma, const Strategy& tau, int cap) {
    Composite out{{}, interaction(sigma, tau, cap), {}};
    const auto& ix = out.interaction;
    const auto& A = sigma.source();
    const auto& C = tau.target();
    int na = A.size(), nb = sigma.target().size();
    Mask visible = ix.es.all() & ~ix.es.neutral();
    auto carrier = hide(ix.es, visible);
    carrier.name = tau.name + "." + sigma.name;
    std::vector<int> label;
    for_each_bit(visible, [&](int e) {
        int g = ix.label[e];
        label.push_back(g < na ? g : g - nb);
    });
    for_each_bit(ix.es.neutral(), [&](int e) {
        out.provenance.push_back(
            {ix.es.id(e), sigma.carrier.id(ix.left[e]), tau.carrier.id(ix.right[e])});
    });
    out.strategy = make_arrow(tau.name + "." + sigma.name, carrier, A, C, label);
    return out;
}

Strategy compose(const Strategy& sigma, const Strategy& tau, int cap) {
    return compose_full(sigma, tau, cap).strategy;
}

}  // namespace cg
