#include <gtest/gtest.h>

#include "cg/composition.hpp"
#include "cg/functional.hpp"
#include "support.hpp"

using namespace cg;
using namespace cg::testing;

namespace {

std::vector<WinningConditions> every_wins(const EventStructure& g) {
    auto cs = all_configurations(g);
    std::vector<WinningConditions> out;
    for (Mask sel = 0; sel < (Mask{1} << cs.size()); ++sel) {
        std::vector<Mask> w;
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (has(sel, static_cast<int>(i))) w.push_back(cs[i]);
        out.push_back(make_wins(g, w));
    }
    return out;
}

Strategy nondet_choice() {
    return strat("choice", "p- a+ b+ | p<a p<b | a#b", F1P(), F2CF(), "p:L.p a:R.a b:R.b");
}

std::vector<Strategy> player_strategies() {
    return {copycat(F1P()), copycat(F2CO()), copycat(F2SEQ()), lift(duplicator(F1P())),
            lift(detector(F2CO(), {3})), nondet_choice()};
}

}  // namespace

TEST(StableFunction, Examples) {
    auto id = extract_stable_function(copycat(F1P()));
    EXPECT_EQ(id(0), Mask{0});
    EXPECT_EQ(id(1), Mask{1});
    auto dup = duplicator(F1P());
    auto f = extract_stable_function(lift(dup));
    for (Mask x : dup.domain()) EXPECT_EQ(f(x), dup(x));
    auto det = extract_stable_function(lift(detector(F2CO(), {3})));
    EXPECT_EQ(det(3), Mask{1});
    EXPECT_EQ(det(1), Mask{0});
    EXPECT_TRUE(check_affine_stable(det).ok());
    EXPECT_THROW(extract_stable_function(nondet_choice()), Refused);
    EXPECT_THROW(extract_stable_function(copycat(DLX())), Refused);
}

TEST(StableFunction, RoundTrips) {
    for (const auto& s : player_strategies()) {
        if (!is_deterministic(s)) continue;
        auto f = extract_stable_function(s);
        EXPECT_TRUE(strategies_isomorphic(lift(f), s)) << s.name;
        auto g = extract_stable_function(lift(f));
        for (Mask x : f.domain()) EXPECT_EQ(g(x), f(x));
    }
}

TEST(StableSpan, RoundTripsAndShapes) {
    for (const auto& s : player_strategies()) {
        auto sp = extract_stable_span(s);
        EXPECT_TRUE(validate_span(sp).ok()) << s.name;
        EXPECT_TRUE(strategies_isomorphic(strategy_of_span(sp), s)) << s.name;
    }
    auto ch = extract_stable_span(nondet_choice());
    EXPECT_EQ(ch.vertex.size(), 2);
    EXPECT_EQ(ch.vertex.conflicts().size(), 1u);
    auto empty = extract_stable_span(copycat(F0()));
    EXPECT_EQ(empty.vertex.size(), 0);
    EXPECT_TRUE(strategies_isomorphic(strategy_of_span(identity_span(F2SEQ())), copycat(F2SEQ())));

    // deterministic spans agree with the extracted function
    auto dup = lift(duplicator(F2CO()));
    auto sp = extract_stable_span(dup);
    auto f = extract_stable_function(dup);
    for (Mask x : f.domain()) {
        auto outs = span_outputs(sp, x);
        EXPECT_EQ(*outs.rbegin(), f(x));
        for (Mask y : outs) EXPECT_TRUE(subset(y, f(x)));
    }

    auto two = es("A", "a1+ a2+");
    StableSpan d{"both", two, F1P(), F1P(), {0}, {3}};
    EXPECT_TRUE(validate_span(d).ok());
    auto ds = strategy_of_span(d);
    EXPECT_TRUE(check_strategy(ds).ok());
    int e = ds.carrier.index("E.p");
    EXPECT_TRUE(ds.carrier.leq(ds.carrier.index("L.a1"), e));
    EXPECT_TRUE(ds.carrier.leq(ds.carrier.index("L.a2"), e));
}

TEST(StableSpan, DuplicatorSpan) {
    auto a = F2SEQ();
    auto aa = parallel(a, a);
    StableSpan sp{"dup", a, aa, aa, {}, {}};
    for (int e = 0; e < aa.size(); ++e) {
        sp.out.push_back(e);
        sp.dem.push_back(a.down(e % a.size()));
    }
    EXPECT_TRUE(validate_span(sp).ok());
    EXPECT_TRUE(strategies_isomorphic(strategy_of_span(sp), lift(duplicator(a))));
}

TEST(StableSpan, Composition) {
    auto a = es("A", "a+");
    auto aa = parallel(a, a);
    auto dup = extract_stable_span(lift(duplicator(a)));
    auto det = extract_stable_span(lift(detector(aa, {3})));
    auto both = span_compose(dup, det);
    ASSERT_EQ(both.vertex.size(), 1);
    EXPECT_EQ(both.dem[0], Mask{1});

    auto spans = std::vector<StableSpan>{};
    for (const auto& s : player_strategies()) spans.push_back(extract_stable_span(s));
    int pairs = 0;
    for (const auto& f : spans)
        for (const auto& g : spans) {
            if (!(f.b == g.a)) continue;
            auto gf = span_compose(f, g);
            for (Mask x : all_configurations(f.a)) EXPECT_EQ(span_outputs(gf, x), let_outputs(f, g, x));
            EXPECT_TRUE(strategies_isomorphic(strategy_of_span(span_compose(identity_span(f.a), f)),
                                              strategy_of_span(f)));
            for (const auto& h : spans) {
                if (!(g.b == h.a)) continue;
                auto l = span_compose(span_compose(f, g), h);
                auto r = span_compose(f, span_compose(g, h));
                EXPECT_TRUE(strategies_isomorphic(strategy_of_span(l), strategy_of_span(r)));
            }
            ++pairs;
        }
    EXPECT_GT(pairs, 5);
}

TEST(GoI, CopycatIsSymmetry) {
    auto p = goi_pair(copycat(DLX()));
    for (const auto& [in, out] : p.table) {
        EXPECT_EQ(out.first, in.second);
        EXPECT_EQ(out.second, in.first);
    }
    // no Opponent parts: a plain stable function
    auto s = lift(duplicator(F1P()));
    auto g = goi_pair(s);
    auto f = extract_stable_function(s);
    for (const auto& [in, out] : g.table) {
        EXPECT_EQ(out.first, Mask{0});
        EXPECT_EQ(out.second, f(in.first));
    }
    EXPECT_THROW(goi_pair(copycat(es("C", "q+ r- | q<r"))), Refused);
}

TEST(GoI, TraceMatchesComposition) {
    auto ss = dialectica_strategies();
    int pairs = 0;
    for (const auto& s : ss)
        for (const auto& t : ss) {
            if (!(s.target() == t.source())) continue;
            auto tr = goi_trace_compose(goi_pair(s), goi_pair(t));
            EXPECT_TRUE(tr.pair == goi_pair(compose(s, t))) << s.name << " ; " << t.name;
            EXPECT_LE(tr.max_rounds, s.target().size() + 1);
            ++pairs;
        }
    EXPECT_GT(pairs, 8);
    auto tr = goi_trace_compose(goi_pair(dlx_pipeline()), goi_pair(dlx_back()));
    EXPECT_GE(tr.max_rounds, 3);
    auto id = goi_trace_compose(goi_pair(dlx_pipeline()), goi_pair(copycat(DLXB())));
    EXPECT_TRUE(id.pair == goi_pair(dlx_pipeline()));
}

TEST(GoI, WinningMatchesStrategyLevel) {
    auto s = dlx_pipeline();
    auto p = goi_pair(s);
    for (const auto& wa : every_wins(DLX()))
        for (const auto& wb : every_wins(DLXB()))
            EXPECT_EQ(goi_winning(p, wa, wb), check_winning_strategy(s, winning_arrow(wa, wb)).winning);
}

TEST(GoI, Embedding) {
    for (auto g : {DLX(), F2SEQ()}) {
        auto e = goi_embed(copycat(g));
        EXPECT_TRUE(check_strategy(e).ok());
        EXPECT_TRUE(is_goi_game(e.source()));
        EXPECT_TRUE(strategies_isomorphic(e, copycat(split_game(g)))) << g.name;
    }
    // n<p is lost when split, so the embedded copycat is not the split copycat
    auto np = es("NP", "n- p+ | n<p");
    auto enp = goi_embed(copycat(np));
    EXPECT_TRUE(is_goi_game(enp.source()));
    EXPECT_FALSE(strategies_isomorphic(enp, copycat(split_game(np))));
    EXPECT_TRUE(is_deterministic(enp));

    auto pl = lift(duplicator(F1P()));
    EXPECT_TRUE(find_iso(goi_embed(pl).carrier, pl.carrier));
    EXPECT_THROW(goi_embed(copycat(RACE())), Refused);
}

TEST(GoI, CompositeComparison) {
    for (auto g : {DLX(), es("NP", "n- p+ | n<p"), es("PN", "p+ n- | p<n"), es("ALT3", "a- b+ c- | a<b b<c")}) {
        auto f = split_cfun(g);
        EXPECT_TRUE(strategies_isomorphic(compose(lift(f), colift(f)), copycat(g))) << g.name;
    }
    auto np = es("NP", "n- p+ | n<p");
    auto sg = copycat(parallel(np, np));
    auto tg = lift(projector(np, np));
    auto whole = goi_embed(compose(sg, tg));
    auto parts = compose(goi_embed(sg), goi_embed(tg));
    EXPECT_FALSE(find_two_cells(whole, parts, false, 1).empty());
    EXPECT_TRUE(strategies_isomorphic(whole, parts));
}

TEST(Lens, Examples) {
    auto l = extract_lens(copycat(DLX()));
    EXPECT_EQ(l.fwd.at(1), Mask{1});
    EXPECT_EQ(l.bwd.at({1, 2}), Mask{2});
    EXPECT_EQ(l.bwd.at({0, 2}), Mask{2});
    auto p = extract_lens(dlx_pipeline());
    EXPECT_EQ(p.fwd.at(1), Mask{1});
    EXPECT_EQ(p.fwd.at(0), Mask{0});
    EXPECT_EQ(p.bwd.at({1, 2}), Mask{2});
    EXPECT_EQ(p.bwd.at({0, 2}), Mask{0});
    auto e = extract_lens(copycat(with_levels(F0(), {})));
    EXPECT_EQ(e.fwd.size(), 1u);
    EXPECT_EQ(e.bwd.size(), 1u);

    auto bad = strat("bad", "q- t- s+ r+ | t<s q<r", DLX(), DLXB(), "q:L.q t:R.t s:R.s r:L.r");
    ASSERT_TRUE(check_strategy(bad).ok());
    EXPECT_THROW(extract_lens(bad), Refused);
}

TEST(Lens, CompositionLaw) {
    auto ss = dialectica_strategies();
    int pairs = 0;
    for (const auto& s : ss)
        for (const auto& t : ss) {
            if (!(s.target() == t.source())) continue;
            auto lhs = extract_lens(compose(s, t));
            auto rhs = compose_lenses(extract_lens(s), extract_lens(t));
            EXPECT_TRUE(lhs == rhs) << s.name << " ; " << t.name;
            ++pairs;
        }
    EXPECT_GT(pairs, 8);
    auto l = extract_lens(dlx_pipeline());
    EXPECT_TRUE(compose_lenses(extract_lens(copycat(DLX())), l) == l);
}

TEST(Lens, GirardVariant) {
    auto disc = discrete_order({1, 2});
    auto l = extract_lens(dlx_flat(), &disc);
    EXPECT_FALSE(l.bwd_uses_x());
    EXPECT_THROW(extract_lens(dlx_pipeline(), &disc), Refused);
    EXPECT_TRUE(extract_lens(dlx_pipeline()).bwd_uses_x());
}

TEST(Lens, WinningMatchesStrategyLevel) {
    for (const auto& s : {dlx_pipeline(), dlx_flat()}) {
        auto l = extract_lens(s);
        for (const auto& wa : every_wins(DLX()))
            for (const auto& wb : every_wins(DLXB()))
                EXPECT_EQ(lens_winning(l, wa, wb), check_winning_strategy(s, winning_arrow(wa, wb)).winning);
    }
}

TEST(DependentLens, Examples) {
    for (const auto& s : dialectica_strategies()) {
        auto d = extract_dependent_lens(s);
        auto l = extract_lens(s);
        EXPECT_EQ(d.fwd, l.fwd);
        EXPECT_EQ(d.bwd, l.bwd);
    }
    auto c = extract_dependent_lens(copycat(CQ()));
    EXPECT_EQ(c.bwd.size(), 3u);
    EXPECT_EQ(c.bwd.count({0, 2}), 0u);
    EXPECT_EQ(c.bwd.at({1, 2}), Mask{2});
    auto e = extract_dependent_lens(eager());
    ASSERT_TRUE(check_strategy(eager()).ok());
    EXPECT_EQ(e.fwd.at(0), Mask{1});
    EXPECT_EQ(e.bwd.at({0, 2}), Mask{0});
    EXPECT_EQ(e.bwd.at({1, 2}), Mask{2});
    EXPECT_EQ(e.bwd.at({0, 0}), Mask{0});

    std::vector<Strategy> ss{copycat(CQ()), eager()};
    for (const auto& s : ss)
        for (const auto& t : ss)
            EXPECT_TRUE(extract_dependent_lens(compose(s, t)) ==
                        compose_dependent_lenses(extract_dependent_lens(s), extract_dependent_lens(t)));
    for (const auto& s : ss) {
        auto d = extract_dependent_lens(s);
        for (const auto& wa : every_wins(CQ()))
            for (const auto& wb : every_wins(CQ()))
                EXPECT_EQ(dependent_lens_winning(d, wa, wb),
                          check_winning_strategy(s, winning_arrow(wa, wb)).winning);
    }
}

TEST(Plumbing, ParallelAndSwap) {
    auto a = F2SEQ(), b = DLX();
    auto p = strategy_parallel(copycat(a), copycat(b));
    EXPECT_TRUE(check_strategy(p).ok());
    EXPECT_TRUE(strategies_isomorphic(p, copycat(parallel(a, b))));
    auto sw = swap_strategy(a, b);
    EXPECT_TRUE(check_strategy(sw).ok());
    auto back = swap_strategy(b, a);
    EXPECT_TRUE(strategies_isomorphic(compose(sw, back), copycat(parallel(a, b))));
    std::vector<int> bad(copycat(a).game.size(), 0);
    EXPECT_THROW(retype(copycat(a), a, a, bad), Error);
}
