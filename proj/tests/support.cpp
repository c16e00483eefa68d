#include "support.hpp"

#include <sstream>

namespace cg::testing {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::stringstream ss(s);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

}  // namespace

EventStructure es(const std::string& name, const std::string& spec) {
    auto parts = split(spec, '|');
    std::string text = "es " + name + "\n";
    for (auto w : words(parts[0])) {
        std::string level;
        if (auto at = w.find('@'); at != std::string::npos) {
            level = " level=" + w.substr(at + 1);
            w = w.substr(0, at);
        }
        char p = w.back();
        text += "event " + w.substr(0, w.size() - 1) + " " + p + level + "\n";
    }
    if (parts.size() > 1)
        for (const auto& w : words(parts[1])) {
            auto ab = split(w, '<');
            text += "cover " + ab[0] + " " + ab[1] + "\n";
        }
    if (parts.size() > 2)
        for (const auto& w : words(parts[2])) {
            text += "conflict";
            for (const auto& x : split(w, '#')) text += " " + x;
            text += "\n";
        }
    return parse_es(text);
}

EventStructure F0() { return es("F0", ""); }
EventStructure F1P() { return es("F1P", "p+"); }
EventStructure F1N() { return es("F1N", "n-"); }
EventStructure F2CO() { return es("F2CO", "a+ b+"); }
EventStructure F2CF() { return es("F2CF", "a+ b+ | | a#b"); }
EventStructure F2SEQ() { return es("F2SEQ", "a+ b+ | a<b"); }
EventStructure DLX() { return es("DLX", "q+@1 r-@2"); }
EventStructure RACE() { return es("RACE", "n- p+ | | n#p"); }

std::vector<NamedGame> game_corpus() {
    std::vector<NamedGame> g;
    auto add = [&](EventStructure e) { g.push_back({e.name, std::move(e)}); };
    add(F0());
    add(F1P());
    add(F1N());
    add(F2CO());
    add(F2CF());
    add(F2SEQ());
    add(DLX());
    add(RACE());
    add(es("NP", "n- p+ | n<p"));
    add(es("PN", "p+ n- | p<n"));
    add(es("ALT3", "o1- p1+ o2- | o1<p1 p1<o2"));
    add(es("CF3", "a+ b+ c+ | | a#b b#c a#c"));
    add(es("TERN", "a+ b+ c+ | | a#b#c"));
    add(es("NEGCO", "m- n-"));
    add(es("NEGCF", "m- n- | | m#n"));
    add(es("DIAMOND", "a+ b+ c+ d+ | a<b a<c b<d c<d"));
    add(es("QA", "q- a1+ a2+ | q<a1 q<a2 | a1#a2"));
    add(es("TREE", "r+ a- b- | r<a r<b | a#b"));
    add(es("DLX2", "q1+@1 q2+@1 r1-@2 r2-@2"));
    add(es("CONT", "q+ r- s+ | q<r"));
    add(es("MIX4", "a+ b- c+ d- | a<c b<d"));
    add(es("PAR", "p+ n-"));
    add(es("BIG10", "n1- p1+ n2- p2+ n3- p3+ n4- p4+ n5- p5+ | n1<p1 n2<p2 n3<p3 n4<p4 n5<p5"));
    return g;
}

std::set<Mask> as_set(const std::vector<Mask>& v) { return {v.begin(), v.end()}; }

std::vector<Mask> brute_configurations(const EventStructure& e) {
    int n = e.size();
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le[i][i] = true;
    for (auto [a, b] : e.covers()) le[a][b] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (le[i][k] && le[k][j]) le[i][j] = true;
    std::vector<Mask> out;
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            if (has(x, j))
                for (int i = 0; i < n && ok; ++i)
                    if (le[i][j] && !has(x, i)) ok = false;
        for (Mask c : e.conflicts())
            if ((c & x) == c) ok = false;
        if (ok) out.push_back(x);
    }
    return out;
}

}  // namespace cg::testing

namespace cg::testing {

namespace {

std::vector<int> parse_labels(const EventStructure& carrier, const EventStructure& game,
                              const std::string& labels) {
    std::vector<int> out(carrier.size(), -1);
    std::stringstream ss(labels);
    std::string w;
    while (ss >> w) {
        auto c = w.find(':');
        out[carrier.at(w.substr(0, c))] = game.at(w.substr(c + 1));
    }
    for (int v : out)
        if (v < 0) throw Error("unlabelled carrier event");
    return out;
}

}  // namespace

Strategy strat(const std::string& name, const std::string& carrier, const EventStructure& a,
               const EventStructure& b, const std::string& labels) {
    auto c = es(name, carrier);
    auto g = arrow_game(a, b);
    return make_arrow(name, c, a, b, parse_labels(c, g, labels));
}

Strategy strat_in(const std::string& name, const std::string& carrier, const EventStructure& g,
                  const std::string& labels) {
    auto c = es(name, carrier);
    return make_strategy(name, c, g, parse_labels(c, g, labels));
}

EventStructure DLXB() { return es("DLXB", "s+@1 t-@2"); }

Strategy dlx_pipeline() {
    return strat("pipe", "q- s+ t- r+ | q<s q<r t<r", DLX(), DLXB(),
                 "q:L.q s:R.s t:R.t r:L.r");
}

bool brute_deterministic(const Strategy& s) {
    const auto& c = s.carrier;
    for (Mask x = 0; x < (Mask{1} << c.size()); ++x) {
        Mask negs = 0;
        for (int e = 0; e < c.size(); ++e)
            if (c.pol(e) == Polarity::minus)
                for_each_bit(x, [&](int t) {
                    if (c.leq(e, t)) negs |= bit(e);
                });
        if (c.consistent(negs) && !c.consistent(x)) return false;
    }
    return true;
}

}  // namespace cg::testing

namespace cg::testing {

Strategy dlx_back() {
    return strat("back", "s- q+ r- t+ | s<q s<t r<t", DLXB(), DLX(), "s:L.s q:R.q r:R.r t:L.t");
}

Strategy dlx_flat() {
    return strat("flat", "q- s+ t- r+ | q<s t<r", DLX(), DLXB(), "q:L.q s:R.s t:R.t r:L.r");
}

Strategy dlx2_merge() {
    auto d2 = es("DLX2", "q1+@1 q2+@1 r1-@2 r2-@2");
    return strat("merge", "q1- q2- q+ r- r1+ r2+ | q1<q q2<q r<r1 q1<r1 r<r2", d2, DLX(),
                 "q1:L.q1 q2:L.q2 q:R.q r:R.r r1:L.r1 r2:L.r2");
}

std::vector<Strategy> dialectica_strategies() {
    return {copycat(DLX()), copycat(DLXB()), dlx_pipeline(), dlx_back(), dlx_flat(), dlx2_merge(),
            copycat(es("DLX2", "q1+@1 q2+@1 r1-@2 r2-@2"))};
}

EventStructure CQ() { return es("CQ", "q+ r- | q<r"); }

Strategy eager() {
    return strat("eager", "lq- rq+ rr- lr+ | rq<rr lq<lr rr<lr", CQ(), CQ(), "lq:L.q rq:R.q rr:R.r lr:L.r");
}

}  // namespace cg::testing
