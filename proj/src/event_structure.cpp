#include "cg/event_structure.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace cg {

char polarity_char(Polarity p) {
    switch (p) {
        case Polarity::plus: return '+';
        case Polarity::minus: return '-';
        default: return '0';
    }
}

Polarity flip(Polarity p) {
    if (p == Polarity::plus) return Polarity::minus;
    if (p == Polarity::minus) return Polarity::plus;
    return p;
}

bool Report::has(const std::string& kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.kind == kind; });
}

void Report::add(std::string kind, std::string detail, std::vector<Mask> sets,
                 std::vector<int> events) {
    violations.push_back({std::move(kind), std::move(detail), std::move(sets), std::move(events)});
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (auto v : other.violations) {
        v.detail = prefix + v.detail;
        violations.push_back(std::move(v));
    }
}

std::string Report::str() const {
    std::string out;
    for (const auto& v : violations) out += v.kind + ": " + v.detail + "\n";
    return out;
}

bool config_order(Mask a, Mask b) {
    int ca = count(a), cb = count(b);
    return ca != cb ? ca < cb : a < b;
}

namespace {

std::vector<std::pair<int, int>> reduction(const std::vector<Mask>& down) {
    std::vector<std::pair<int, int>> covers;
    int n = static_cast<int>(down.size());
    for (int b = 0; b < n; ++b) {
        Mask strict = down[b] & ~bit(b);
        Mask deeper = 0;
        for_each_bit(strict, [&](int c) { deeper |= down[c] & ~bit(c); });
        for_each_bit(strict & ~deeper, [&](int a) { covers.emplace_back(a, b); });
    }
    std::sort(covers.begin(), covers.end());
    return covers;
}

Mask compress(Mask x, Mask v) {
    Mask out = 0;
    int k = 0;
    for_each_bit(v, [&](int e) {
        if (has(x, e)) out |= bit(k);
        ++k;
    });
    return out;
}

}  // namespace

EventStructure make_es(std::string name, std::vector<std::string> ids, std::vector<Polarity> pol,
                       std::vector<std::pair<int, int>> covers, std::vector<Mask> conflicts,
                       std::vector<int> levels) {
    int n = static_cast<int>(ids.size());
    if (n > max_events) throw CapExceeded("event structure '" + name + "' has more than 64 events");
    if (static_cast<int>(pol.size()) != n) throw Error("polarity vector size mismatch");
    if (levels.empty()) levels.assign(n, -1);
    if (static_cast<int>(levels.size()) != n) throw Error("level vector size mismatch");

    EventStructure e;
    e.name = std::move(name);
    for (int i = 0; i < n; ++i) {
        if (ids[i].empty()) throw Error("empty event id");
        if (!e.index_.emplace(ids[i], i).second) throw Error("duplicate event id '" + ids[i] + "'");
    }
    Mask all = low_bits(n);
    for (auto [a, b] : covers)
        if (a < 0 || b < 0 || a >= n || b >= n) throw Error("cover index out of range");
    for (Mask c : conflicts) {
        if (c == 0) throw Error("empty conflict set");
        if (!subset(c, all)) throw Error("conflict index out of range");
    }

    e.ids_ = std::move(ids);
    e.pol_ = std::move(pol);
    e.level_ = std::move(levels);
    e.preds_.assign(n, 0);
    for (auto [a, b] : covers) e.preds_[b] |= bit(a);

    // least fixed point of down[b] = {b} ∪ ⋃ down[preds]
    e.down_.assign(n, 0);
    for (int i = 0; i < n; ++i) e.down_[i] = bit(i);
    for (bool changed = true; changed;) {
        changed = false;
        for (int b = 0; b < n; ++b) {
            Mask d = e.down_[b];
            for_each_bit(e.preds_[b], [&](int a) { d |= e.down_[a]; });
            if (d != e.down_[b]) e.down_[b] = d, changed = true;
        }
    }
    e.acyclic_ = true;
    for (int a = 0; a < n; ++a)
        for_each_bit(e.down_[a] & ~bit(a), [&](int b) {
            if (has(e.down_[b], a)) e.acyclic_ = false;
        });
    for (auto [a, b] : covers)
        if (a == b) e.acyclic_ = false;

    if (e.acyclic_) {
        e.covers_ = reduction(e.down_);
        e.preds_.assign(n, 0);
        for (auto [a, b] : e.covers_) e.preds_[b] |= bit(a);
    } else {
        std::sort(covers.begin(), covers.end());
        covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
        e.covers_ = std::move(covers);
    }
    e.up_.assign(n, 0);
    for (int b = 0; b < n; ++b) for_each_bit(e.down_[b], [&](int a) { e.up_[a] |= bit(b); });

    std::sort(conflicts.begin(), conflicts.end(), config_order);
    conflicts.erase(std::unique(conflicts.begin(), conflicts.end()), conflicts.end());
    for (Mask c : conflicts) {
        bool minimal = std::none_of(e.conflicts_.begin(), e.conflicts_.end(),
                                    [&](Mask d) { return subset(d, c); });
        if (minimal) e.conflicts_.push_back(c);
    }
    return e;
}

bool operator==(const EventStructure& a, const EventStructure& b) {
    return a.ids_ == b.ids_ && a.pol_ == b.pol_ && a.level_ == b.level_ &&
           a.covers_ == b.covers_ && a.conflicts_ == b.conflicts_;
}

bool EventStructure::has_levels() const {
    return std::any_of(level_.begin(), level_.end(), [](int l) { return l >= 0; });
}

int EventStructure::index(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int EventStructure::at(const std::string& id) const {
    int i = index(id);
    if (i < 0) throw Error("unknown event '" + id + "' in '" + name + "'");
    return i;
}

Mask EventStructure::mask_of(const std::vector<std::string>& ids) const {
    Mask m = 0;
    for (const auto& s : ids) m |= bit(at(s));
    return m;
}

Mask EventStructure::down(Mask x) const {
    Mask d = 0;
    for_each_bit(x, [&](int e) { d |= down_[e]; });
    return d;
}

bool EventStructure::consistent(Mask x) const {
    for (Mask c : conflicts_)
        if (subset(c, x)) return false;
    return true;
}

bool EventStructure::down_closed(Mask x) const { return down(x) == x; }

Mask EventStructure::with(Polarity p) const {
    Mask m = 0;
    for (int i = 0; i < size(); ++i)
        if (pol_[i] == p) m |= bit(i);
    return m;
}

std::string EventStructure::show(Mask x) const {
    std::string out = "{";
    bool first = true;
    for_each_bit(x, [&](int e) {
        if (!first) out += ",";
        out += ids_[e];
        first = false;
    });
    return out + "}";
}

EventStructure from_order_and_configs(std::string name, std::vector<std::string> ids,
                                      std::vector<Polarity> pol, const std::vector<Mask>& down,
                                      const std::vector<Mask>& configs, std::vector<int> levels) {
    int n = static_cast<int>(ids.size());
    std::unordered_set<Mask> in(configs.begin(), configs.end());
    std::vector<Mask> up(n, 0);
    for (int b = 0; b < n; ++b) for_each_bit(down[b], [&](int a) { up[a] |= bit(b); });
    auto close = [&](Mask x) {
        Mask d = 0;
        for_each_bit(x, [&](int e) { d |= down[e]; });
        return d;
    };

    // a minimal conflict is an antichain max(y) ∪ {m} with y a configuration
    std::unordered_set<Mask> found;
    std::vector<Mask> conflicts;
    for (Mask y : configs) {
        Mask top = 0;
        for_each_bit(y, [&](int e) {
            if ((up[e] & y) == bit(e)) top |= bit(e);
        });
        for (int m = 0; m < n; ++m) {
            if (has(y, m) || (top & down[m])) continue;
            if (in.count(y | down[m])) continue;
            Mask x = top | bit(m);
            bool minimal = true;
            for_each_bit(top, [&](int t) {
                if (minimal && !in.count(close(x & ~bit(t)))) minimal = false;
            });
            if (minimal && found.insert(x).second) conflicts.push_back(x);
        }
    }
    return make_es(std::move(name), std::move(ids), std::move(pol), reduction(down),
                   std::move(conflicts), std::move(levels));
}

Report validate_event_structure(const EventStructure& e) {
    Report r;
    if (!e.acyclic()) {
        for (auto [a, b] : e.covers())
            if (a == b || e.leq(b, a)) {
                r.add("cycle", "covers " + e.id(a) + " -> " + e.id(b) + " lie on a cycle", {},
                      {a, b});
            }
    }
    for (Mask c : e.conflicts())
        if (count(c) == 1) r.add("singleton-conflict", "conflict " + e.show(c), {c});
    if (!e.acyclic()) return r;

    // X ∪ {e} ∉ Con with e < e′ ∈ X ∈ Con reduces to X = (C \ {e}) ∪ {e′}
    for (Mask c : e.conflicts()) {
        if (count(c) == 1) continue;
        bool reported = false;
        for_each_bit(c, [&](int a) {
            if (reported) return;
            for_each_bit(e.up(a) & ~bit(a), [&](int above) {
                if (reported) return;
                Mask x = (c & ~bit(a)) | bit(above);
                if (e.consistent(x)) {
                    r.add("extension-axiom",
                          "X=" + e.show(x) + " e=" + e.id(a) + " e'=" + e.id(above), {x},
                          {a, above});
                    reported = true;
                }
            });
        });
    }
    return r;
}

std::vector<Mask> all_configurations(const EventStructure& e, int cap) {
    if (cap < 0) cap = default_caps().events;
    if (e.size() > cap)
        throw CapExceeded("configuration enumeration of '" + e.name + "' (" +
                          std::to_string(e.size()) + " events, cap " + std::to_string(cap) + "; up to 2^" +
                          std::to_string(e.size()) + " configurations)");
    std::unordered_set<Mask> seen{0};
    std::vector<Mask> out{0};
    for (std::size_t i = 0; i < out.size(); ++i) {
        Mask x = out[i];
        for (int a = 0; a < e.size(); ++a) {
            if (has(x, a) || !subset(e.down(a) & ~bit(a), x)) continue;
            Mask y = x | bit(a);
            if (e.consistent(y) && seen.insert(y).second) out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end(), config_order);
    return out;
}

bool inc_minus(const EventStructure& a, Mask x, Mask y) {
    return subset(x, y) && subset(y & ~x, a.neg());
}

bool inc_plus(const EventStructure& a, Mask x, Mask y) {
    return subset(x, y) && ((y & ~x) & a.neg()) == 0;
}

bool scott_leq(const EventStructure& a, Mask y, Mask x) {
    Mask n = a.neg(), p = a.pos();
    if (!subset(x | y, a.all())) throw Error("configuration outside game '" + a.name + "'");
    return subset(x & n, y & n) && subset(y & p, x & p);
}

EventStructure dual(const EventStructure& a) {
    std::vector<Polarity> pol = a.polarities();
    for (auto& p : pol) p = flip(p);
    return make_es(a.name.empty() ? "" : a.name + "^", a.ids(), pol, a.covers(), a.conflicts(),
                   a.levels());
}

EventStructure parallel(const EventStructure& a, const EventStructure& b, const std::string& ltag,
                        const std::string& rtag) {
    int k = a.size();
    std::vector<std::string> ids;
    for (const auto& s : a.ids()) ids.push_back(ltag + s);
    for (const auto& s : b.ids()) ids.push_back(rtag + s);
    std::vector<Polarity> pol = a.polarities();
    pol.insert(pol.end(), b.polarities().begin(), b.polarities().end());
    std::vector<int> lv = a.levels();
    lv.insert(lv.end(), b.levels().begin(), b.levels().end());
    auto covers = a.covers();
    for (auto [x, y] : b.covers()) covers.emplace_back(x + k, y + k);
    auto conflicts = a.conflicts();
    for (Mask c : b.conflicts()) conflicts.push_back(c << k);
    return make_es(a.name + "||" + b.name, ids, pol, covers, conflicts, lv);
}

Mask left_part(int left_size, Mask x) { return x & low_bits(left_size); }
Mask right_part(int left_size, Mask x) { return left_size >= 64 ? 0 : x >> left_size; }

std::vector<int> hidden_index(Mask visible) { return members(visible); }

EventStructure hide(const EventStructure& e, Mask visible) {
    if (!subset(visible, e.all())) throw Error("hide: visible set outside the event structure");
    std::vector<std::string> ids;
    std::vector<Polarity> pol;
    std::vector<int> lv;
    std::vector<Mask> down;
    for_each_bit(visible, [&](int a) {
        ids.push_back(e.id(a));
        pol.push_back(e.pol(a));
        lv.push_back(e.level(a));
        down.push_back(compress(e.down(a) & visible, visible));
    });
    std::vector<Mask> conflicts;
    for (Mask c : e.conflicts())
        if (subset(c, visible)) conflicts.push_back(compress(c, visible));
    return make_es(e.name, ids, pol, reduction(down), conflicts, lv);
}

EventStructure rename(const EventStructure& e, const std::vector<std::string>& ids,
                      const std::string& name) {
    if (static_cast<int>(ids.size()) != e.size()) throw Error("rename: id count mismatch");
    return make_es(name.empty() ? e.name : name, ids, e.polarities(), e.covers(), e.conflicts(),
                   e.levels());
}

EventStructure with_levels(const EventStructure& e, std::vector<int> levels) {
    return make_es(e.name, e.ids(), e.polarities(), e.covers(), e.conflicts(), std::move(levels));
}

bool is_race_free(const EventStructure& a, Mask* wx, Mask* wy, Mask* wz) {
    auto configs = all_configurations(a);
    std::unordered_set<Mask> in(configs.begin(), configs.end());
    for (Mask x : configs) {
        std::vector<Mask> ys, zs;
        for (Mask w : configs) {
            if (w == x || !subset(x, w)) continue;
            if (inc_minus(a, x, w)) ys.push_back(w);
            else if (inc_plus(a, x, w)) zs.push_back(w);
        }
        for (Mask y : ys)
            for (Mask z : zs)
                if (!in.count(y | z)) {
                    if (wx) *wx = x;
                    if (wy) *wy = y;
                    if (wz) *wz = z;
                    return false;
                }
    }
    return true;
}

bool ESMap::total() const {
    return std::all_of(fn.begin(), fn.end(), [](int v) { return v >= 0; });
}

Mask ESMap::domain() const {
    Mask m = 0;
    for (int i = 0; i < static_cast<int>(fn.size()); ++i)
        if (fn[i] >= 0) m |= bit(i);
    return m;
}

Mask ESMap::image(Mask x) const {
    Mask m = 0;
    for_each_bit(x, [&](int e) {
        if (fn[e] >= 0) m |= bit(fn[e]);
    });
    return m;
}

ESMap identity_map(const EventStructure& e) {
    ESMap f{e, e, {}};
    for (int i = 0; i < e.size(); ++i) f.fn.push_back(i);
    return f;
}

ESMap compose_maps(const ESMap& g, const ESMap& f) {
    ESMap h{f.source, g.target, {}};
    for (int v : f.fn) h.fn.push_back(v >= 0 ? g.fn[v] : -1);
    return h;
}

Report check_map(const ESMap& f, int cap) {
    Report r;
    if (static_cast<int>(f.fn.size()) != f.source.size()) {
        r.add("shape", "map has " + std::to_string(f.fn.size()) + " entries for " +
                           std::to_string(f.source.size()) + " events");
        return r;
    }
    for (int e = 0; e < f.source.size(); ++e) {
        int v = f.fn[e];
        if (v >= f.target.size()) {
            r.add("shape", "image of " + f.source.id(e) + " out of range", {}, {e});
            return r;
        }
        if (v >= 0 && f.source.pol(e) != f.target.pol(v))
            r.add("polarity", f.source.id(e) + " -> " + f.target.id(v), {}, {e});
    }
    bool image_bad = false, inj_bad = false;
    for (Mask x : all_configurations(f.source, cap)) {
        Mask y = f.image(x);
        if (!image_bad && !f.target.is_config(y)) {
            r.add("image", "image of " + f.source.show(x) + " is " + f.target.show(y) +
                               ", not a configuration", {x, y});
            image_bad = true;
        }
        if (!inj_bad && count(x & f.domain()) != count(y)) {
            r.add("local-injectivity", "collapses events of " + f.source.show(x), {x});
            inj_bad = true;
        }
        if (image_bad && inj_bad) break;
    }
    return r;
}

bool is_rigid(const ESMap& f) {
    if (!f.total()) throw Refused("is_rigid needs a total map");
    for (auto [a, b] : f.source.covers())
        if (!f.target.leq(f.fn[a], f.fn[b])) return false;
    return true;
}

Factorization factorize_map(const ESMap& f) {
    Mask v = f.domain();
    EventStructure mid = hide(f.source, v);
    auto idx = hidden_index(v);
    ESMap proj{f.source, mid, std::vector<int>(f.source.size(), -1)};
    ESMap def{mid, f.target, {}};
    for (int k = 0; k < static_cast<int>(idx.size()); ++k) {
        proj.fn[idx[k]] = k;
        def.fn.push_back(f.fn[idx[k]]);
    }
    return {proj, def};
}

}  // namespace cg
