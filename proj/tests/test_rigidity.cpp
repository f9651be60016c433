#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "support.hpp"

using namespace k3test;

namespace {

const GraphData& fixture_graph() {
    static const GraphData g = order16_graph();
    return g;
}

GraphAction fixture_action(const std::string& name) { return build_action(fixture_graph(), name); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InputError;
}

ConfigHandle make_config(const std::vector<std::string>& vertices,
                         const std::vector<std::tuple<std::string, std::string, int>>& edges) {
    auto g = std::make_shared<CurveConfig>();
    for (const auto& v : vertices) g->add_vertex(v);
    for (const auto& [a, b, m] : edges) g->add_edge(a, b, m);
    return g;
}

// A flag is identified by its curve and either the neighbouring curve or -slot for a free point.
using FlagKey = std::pair<int, int>;
using Assignment = std::map<FlagKey, int>;

Assignment assignment_of(const GraphAction& a) {
    Assignment out;
    for (const auto& [flag, w] : a.weights()) {
        const auto& p = a.points()[static_cast<std::size_t>(flag.second)];
        int other = -p.slot;
        if (p.kind != PointKind::Free) {
            const auto& e = a.config()->edge(p.edge);
            other = e.a == flag.first ? e.b : e.a;
        }
        out[{flag.first, other}] = w;
    }
    return out;
}

// Every assignment for pi = id obeying the local rules, found by exhaustive search.
// Curves of degree >= 3 are pointwise fixed; the rest carry two points with
// weights w and -w; at a transverse point the weights add to c, at a tangency
// they agree. A curve whose weights all vanish is pointwise fixed and keeps no
// free points.
std::set<Assignment> brute_force(const CurveConfig& g, int n, int c) {
    std::vector<FlagKey> flags;
    std::vector<std::vector<std::size_t>> on_curve(static_cast<std::size_t>(g.size()));
    std::map<FlagKey, std::size_t> index;
    for (int v = 0; v < g.size(); ++v) {
        for (const auto& [nb, e] : g.neighbors(v)) flags.emplace_back(v, nb);
        for (int s = 1; g.degree(v) + s <= 2; ++s) flags.emplace_back(v, -s);
    }
    for (std::size_t i = 0; i < flags.size(); ++i) {
        index[flags[i]] = i;
        on_curve[static_cast<std::size_t>(flags[i].first)].push_back(i);
    }
    std::set<Assignment> out;
    std::vector<int> w(flags.size(), 0);
    while (true) {
        bool ok = true;
        for (const auto& here : on_curve) {
            if (!ok) break;
            if (here.size() >= 3) {
                for (std::size_t i : here) ok = ok && w[i] == 0;
            } else {
                ok = (w[here[0]] + w[here[1]]) % n == 0;
            }
        }
        for (const auto& e : g.edges()) {
            if (!ok) break;
            const int wa = w[index[{e.a, e.b}]];
            const int wb = w[index[{e.b, e.a}]];
            ok = e.multiplicity == 1 ? (wa + wb) % n == c % n : wa == wb;
        }
        if (ok) {
            Assignment a;
            for (const auto& here : on_curve) {
                bool fixed = true;
                for (std::size_t i : here) fixed = fixed && w[i] == 0;
                for (std::size_t i : here) {
                    if (!(fixed && flags[i].second < 0)) a[flags[i]] = w[i];
                }
            }
            out.insert(a);
        }
        std::size_t k = 0;
        while (k < w.size() && ++w[k] == n) w[k++] = 0;
        if (k == w.size()) break;
    }
    return out;
}

std::set<Assignment> by_propagation(const ConfigHandle& g, int n, int c) {
    const Permutation id = identity_permutation(g->size());
    std::vector<Seed> anchors = region_anchors(*g, id);
    std::set<Assignment> out;
    std::vector<int> digits(anchors.size(), 0);
    while (true) {
        for (std::size_t k = 0; k < anchors.size(); ++k) anchors[k].weight = digits[k];
        try {
            out.insert(assignment_of(propagate(g, id, n, c, anchors)));
        } catch (const Error&) {
        }
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == n) digits[k++] = 0;
        if (k == digits.size()) break;
    }
    return out;
}

// Local rules checked directly on a finished action.
void expect_local_rules(const GraphAction& a) {
    const CurveConfig& g = *a.config();
    for (std::size_t i = 0; i < a.points().size(); ++i) {
        const auto& p = a.points()[i];
        const int id = static_cast<int>(i);
        if (p.kind == PointKind::Transverse) {
            EXPECT_EQ(mod(*a.weight(p.curves[0], id) + *a.weight(p.curves[1], id), a.n()), a.c()) << a.point_name(id);
        } else if (p.kind == PointKind::Tangency) {
            EXPECT_EQ(a.weight(p.curves[0], id), a.weight(p.curves[1], id)) << a.point_name(id);
        } else if (p.kind == PointKind::Swap) {
            EXPECT_EQ(a.pi()[static_cast<std::size_t>(p.curves[0])], p.curves[1]);
        }
    }
    for (int v = 0; v < g.size(); ++v) {
        const auto pts = a.points_on(v);
        switch (a.state(v)) {
        case CurveState::Mobile:
            for (int p : pts) EXPECT_EQ(a.points()[static_cast<std::size_t>(p)].kind, PointKind::Swap) << g.name(v);
            break;
        case CurveState::Fixed:
            for (int p : pts) EXPECT_EQ(a.weight(v, p), 0) << g.name(v);
            break;
        case CurveState::Stable:
            ASSERT_EQ(pts.size(), 2U) << g.name(v);
            EXPECT_NE(*a.weight(v, pts[0]), 0);
            EXPECT_EQ(mod(*a.weight(v, pts[0]) + *a.weight(v, pts[1]), a.n()), 0) << g.name(v);
            break;
        }
    }
}

std::pair<int, int> nk(const GraphAction& a) {
    const auto cs = census(a);
    return {cs.isolated_points, cs.fixed_curves};
}

}  // namespace

TEST(Propagation, MatchesExhaustiveSearchOnSmallGraphs) {
    const ConfigHandle chain = make_config({"A", "B", "C"}, {{"A", "B", 1}, {"B", "C", 1}});
    const ConfigHandle triangle = make_config({"A", "B", "C"}, {{"A", "B", 1}, {"B", "C", 1}, {"A", "C", 1}});
    const ConfigHandle star = make_config({"O", "P", "Q", "R"}, {{"O", "P", 1}, {"O", "Q", 1}, {"O", "R", 1}});
    const ConfigHandle tangent = make_config({"A", "B", "S"}, {{"A", "B", 2}, {"S", "A", 1}});
    const ConfigHandle split = make_config({"A", "B", "C", "D"}, {{"A", "B", 1}, {"C", "D", 2}});
    for (const auto& g : {chain, triangle, star, tangent, split}) {
        for (int n : {1, 2, 3, 4, 6}) {
            for (int c = 0; c < n; ++c) {
                EXPECT_EQ(by_propagation(g, n, c), brute_force(*g, n, c)) << g->name(0) << g->size() << " n=" << n
                                                                          << " c=" << c;
            }
        }
    }
}

TEST(Propagation, TriangleNeedsThreeCTrivial) {
    const ConfigHandle triangle = make_config({"A", "B", "C"}, {{"A", "B", 1}, {"B", "C", 1}, {"A", "C", 1}});
    EXPECT_EQ(brute_force(*triangle, 3, 1).size(), 3U);
    EXPECT_TRUE(brute_force(*triangle, 4, 1).empty());
    const Permutation id = identity_permutation(3);
    EXPECT_EQ(kind_of([&] { (void)propagate(triangle, id, 4, 1, Seed{0, 1, 2}); }), ErrorKind::InconsistentCycle);
    const GraphAction a = propagate(triangle, id, 3, 1, Seed{0, 1, 2});
    expect_local_rules(a);
    EXPECT_EQ(nk(a), (std::pair<int, int>{1, 1}));
}

TEST(Census, FixtureActions) {
    EXPECT_EQ(nk(fixture_action("sigma")), (std::pair<int, int>{10, 1}));
    EXPECT_EQ(nk(fixture_action("sigma_ast")), (std::pair<int, int>{4, 0}));
    EXPECT_EQ(nk(fixture_action("tau")), (std::pair<int, int>{8, 0}));
    EXPECT_EQ(fixture_action("sigma").order(), 16);
    EXPECT_EQ(fixture_action("sigma_ast").order(), 16);
    EXPECT_EQ(fixture_action("tau").order(), 2);
}

TEST(Census, SigmaItemization) {
    const auto cs = census(fixture_action("sigma"));
    EXPECT_EQ(cs.curves, std::vector<std::string>{"C4"});
    std::vector<std::string> lines;
    for (const auto& p : cs.points) lines.push_back(to_string(p.kind) + " " + p.location + " " + p.weights);
    const std::vector<std::string> expected{
        "transverse-intersection C1:C2 C1=3 C2=14", "transverse-intersection C2:C3 C2=2 C3=15",
        "transverse-intersection C5:C6 C5=15 C6=2", "transverse-intersection C6:C7 C6=14 C7=3",
        "free-point C8:free1 C8=15",                "tangency a5:b5 a5=11 b5=11",
        "transverse-intersection s0:C1 s0=4 C1=13", "transverse-intersection s0:a5 s0=12 a5=5",
        "transverse-intersection s1:C7 s1=4 C7=13", "transverse-intersection s1:b5 s1=12 b5=5",
    };
    EXPECT_EQ(lines, expected);
}

TEST(Census, SwapPointsCountAsIsolated) {
    const auto cs = census(fixture_action("tau"));
    int swaps = 0;
    for (const auto& p : cs.points) swaps += p.kind == PointKind::Swap ? 1 : 0;
    EXPECT_EQ(swaps, 5);
    EXPECT_TRUE(cs.curves.empty());
}

TEST(Propagation, LocalRulesHoldOnEveryFixtureAction) {
    for (const auto& name : {"sigma", "sigma_ast", "tau"}) {
        const GraphAction a = fixture_action(name);
        expect_local_rules(a);
        for (long long m = 1; m <= 16; ++m) expect_local_rules(power(a, m));
    }
}

TEST(Propagation, AnyFlagOfAConnectedActionReproducesIt) {
    for (const auto& name : {"sigma", "sigma_ast", "tau"}) {
        const GraphAction a = fixture_action(name);
        for (const auto& [flag, w] : a.weights()) {
            const GraphAction b = propagate(a.config(), a.pi(), a.n(), a.c(), a.seed_for(flag.first, flag.second, w));
            EXPECT_EQ(b, a) << name << " from " << a.config()->name(flag.first) << "@" << a.point_name(flag.second);
        }
    }
}

TEST(Power, CompositionLaw) {
    for (const auto& name : {"sigma", "sigma_ast"}) {
        const GraphAction a = fixture_action(name);
        for (long long i = 1; i <= 6; ++i) {
            for (long long j = 1; j <= 5; ++j) {
                EXPECT_EQ(power(power(a, i), j), power(a, i * j)) << name << " " << i << " " << j;
                EXPECT_EQ(compose_actions(power(a, i), power(a, j)), power(a, i + j)) << name << " " << i << " " << j;
            }
        }
    }
}

TEST(Power, ToTheOrderFixesEverything) {
    const GraphAction a = fixture_action("sigma");
    const GraphAction id = power(a, 16);
    EXPECT_EQ(nk(id), (std::pair<int, int>{0, 20}));
    EXPECT_EQ(id.order(), 1);
    EXPECT_EQ(power(a, 0), id);
    EXPECT_EQ(power(a, 17), a);
}

TEST(Power, SigmaPowers) {
    const GraphAction a = fixture_action("sigma");
    EXPECT_EQ(nk(power(a, 2)), (std::pair<int, int>{10, 1}));
    EXPECT_EQ(power(a, 2).order(), 8);
    const auto cs8 = census(power(a, 8));
    EXPECT_EQ(cs8.isolated_points, 6);
    EXPECT_EQ(cs8.curves, (std::vector<std::string>{"C2", "C4", "C6", "s0", "s1"}));
    EXPECT_EQ(power(a, -1), inverse(a));
}

TEST(Compose, Examples) {
    const GraphAction sigma = fixture_action("sigma");
    const GraphAction sigma_ast = fixture_action("sigma_ast");
    const GraphAction quotient = compose_actions(sigma, inverse(sigma_ast));
    EXPECT_EQ(quotient, fixture_action("tau"));
    EXPECT_EQ(nk(quotient), (std::pair<int, int>{8, 0}));
    EXPECT_EQ(compose_actions(sigma, sigma), power(sigma, 2));
    for (const auto& a : {sigma, sigma_ast}) {
        const GraphAction e = compose_actions(a, inverse(a));
        EXPECT_EQ(e.pi(), identity_permutation(20));
        EXPECT_EQ(nk(e), (std::pair<int, int>{0, 20}));
        EXPECT_EQ(inverse(inverse(a)), a);
    }
}

TEST(Compose, Incompatible) {
    const ConfigHandle chain = make_config({"A", "B", "C"}, {{"A", "B", 1}, {"B", "C", 1}});
    const Permutation id = identity_permutation(3);
    const GraphAction four = propagate(chain, id, 4, 1, Seed{0, 1, 1});
    const GraphAction six = propagate(chain, id, 6, 1, Seed{0, 1, 1});
    EXPECT_EQ(kind_of([&] { (void)compose_actions(four, six); }), ErrorKind::IncompatibleActions);
    EXPECT_EQ(kind_of([&] { (void)compose_actions(four, fixture_action("sigma")); }), ErrorKind::IncompatibleActions);
}

TEST(Automorphisms, GroupOfTheFixture) {
    // S5 permuting the five III fibers, times the reflection exchanging s0 and s1.
    const CurveConfig& g = *fixture_graph().config;
    const auto autos = graph_automorphisms(g);
    EXPECT_EQ(autos.size(), 240U);
    const std::set<Permutation> group(autos.begin(), autos.end());
    EXPECT_EQ(group.size(), autos.size());
    EXPECT_TRUE(group.count(identity_permutation(g.size())));
    for (const auto& p : autos) {
        EXPECT_TRUE(is_graph_automorphism(g, p));
        EXPECT_TRUE(group.count(invert_permutation(p)));
    }
    for (std::size_t i = 0; i < autos.size(); i += 7) {
        for (const auto& q : autos) EXPECT_TRUE(group.count(compose_permutations(autos[i], q)));
    }
    for (const auto& name : {"sigma", "sigma_ast", "tau"}) EXPECT_TRUE(group.count(fixture_action(name).pi()));
    EXPECT_EQ(permutation_order(fixture_action("sigma_ast").pi()), 4);
}

TEST(Enumerate, UniqueClassWithTheSigmaCensus) {
    const auto classes = enumerate_actions(fixture_graph().config, 16, 1, CensusFilter{10, 1});
    ASSERT_EQ(classes.size(), 1U);
    const GraphAction& rep = classes[0].representative;
    EXPECT_EQ(classes[0].key, canonical_key(fixture_action("sigma"), graph_automorphisms(*fixture_graph().config)));
    // The two degree-6 curves rotate with weights 4 and 12.
    const CurveConfig& g = *fixture_graph().config;
    for (int v = 0; v < g.size(); ++v) {
        if (g.degree(v) != 6) continue;
        EXPECT_EQ(rep.state(v), CurveState::Stable);
        std::multiset<int> ws;
        for (int p : rep.points_on(v)) ws.insert(*rep.weight(v, p));
        EXPECT_EQ(ws, (std::multiset<int>{4, 12}));
    }
    expect_local_rules(rep);
}

TEST(Enumerate, ConjugatesShareTheCanonicalKey) {
    const GraphAction a = fixture_action("sigma");
    const auto autos = graph_automorphisms(*a.config());
    const auto key = canonical_key(a, autos);
    for (std::size_t i = 0; i < autos.size(); i += 11) {
        const GraphAction b = conjugate(a, autos[i]);
        EXPECT_EQ(canonical_key(b, autos), key);
        EXPECT_EQ(nk(b), nk(a));
    }
}

TEST(Enumerate, TrivialOrder) {
    const auto classes = enumerate_actions(fixture_graph().config, 1, 0);
    ASSERT_EQ(classes.size(), 1U);
    EXPECT_EQ(nk(classes[0].representative), (std::pair<int, int>{0, 20}));
}

TEST(Enumerate, ThreadCountDoesNotChangeTheResult) {
    const auto one = enumerate_actions(fixture_graph().config, 16, 1, std::nullopt, 1);
    const auto four = enumerate_actions(fixture_graph().config, 16, 1, std::nullopt, 4);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].key, four[i].key);
        EXPECT_EQ(one[i].members, four[i].members);
        EXPECT_EQ(one[i].representative, four[i].representative);
    }
}

TEST(Errors, EveryKind) {
    const GraphData& g = fixture_graph();
    const ConfigHandle cfg = g.config;
    const Permutation sigma_pi = fixture_action("sigma").pi();
    const int s0 = cfg->vertex("s0");
    const int c1 = cfg->vertex("C1");
    EXPECT_EQ(kind_of([&] { (void)propagate(cfg, parse_permutation(*cfg, "(C1 C2)"), 16, 1, Seed{s0, c1, 4}); }),
              ErrorKind::NotAGraphAutomorphism);
    EXPECT_EQ(kind_of([&] { (void)propagate(cfg, sigma_pi, 16, 1, Seed{cfg->vertex("a1"), s0, 4}); }),
              ErrorKind::AnchorOnMobileCurve);
    // The fixture is rigid: any other weight at the anchor breaks a cycle.
    EXPECT_EQ(kind_of([&] { (void)propagate(cfg, sigma_pi, 16, 1, Seed{s0, c1, 2}); }),
              ErrorKind::InconsistentCycle);
    // A curve whose swapped neighbours need rotation order 2.
    const ConfigHandle fork = make_config({"O", "P", "Q"}, {{"O", "P", 1}, {"O", "Q", 1}});
    const Permutation swap = parse_permutation(*fork, "(P Q)");
    EXPECT_NO_THROW((void)propagate(fork, swap, 4, 1, Seed{0, std::nullopt, 2}));
    EXPECT_EQ(kind_of([&] { (void)propagate(fork, swap, 4, 1, Seed{0, std::nullopt, 1}); }),
              ErrorKind::OrbitLengthMismatch);
    const ConfigHandle split = make_config({"A", "B", "C", "D"}, {{"A", "B", 1}, {"C", "D", 2}});
    EXPECT_EQ(kind_of([&] { (void)propagate(split, identity_permutation(4), 4, 1, Seed{0, 1, 1}); }),
              ErrorKind::UndeterminedCurve);
    EXPECT_EQ(kind_of([&] { (void)propagate(cfg, sigma_pi, 16, 1, Seed{c1, cfg->vertex("C7"), 4}); }),
              ErrorKind::InputError);

    const ConfigHandle star = make_config({"O", "P", "Q", "R"}, {{"O", "P", 1}, {"O", "Q", 1}, {"O", "R", 1}});
    EXPECT_EQ(kind_of([&] { (void)propagate(star, identity_permutation(4), 4, 1, Seed{0, 1, 1}); }),
              ErrorKind::TooManyFixedPoints);
    const ConfigHandle triangle = make_config({"A", "B", "C"}, {{"A", "B", 1}, {"B", "C", 1}, {"A", "C", 1}});
    EXPECT_EQ(kind_of([&] { (void)propagate(triangle, identity_permutation(3), 4, 1, Seed{0, 1, 0}); }),
              ErrorKind::InconsistentCycle);
    try {
        (void)propagate(triangle, identity_permutation(3), 4, 1, Seed{0, 1, 0});
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos) << e.what();
    }
    EXPECT_EQ(kind_of([&] { (void)enumerate_actions(cfg, 0, 0); }), ErrorKind::InputError);
}

TEST(Io, PermutationRoundTrip) {
    const CurveConfig& g = *fixture_graph().config;
    for (const auto& p : graph_automorphisms(g)) EXPECT_EQ(parse_permutation(g, permutation_to_string(g, p)), p);
    EXPECT_EQ(parse_permutation(g, "()"), identity_permutation(g.size()));
    EXPECT_EQ(kind_of([&] { (void)parse_permutation(g, "(C1 Z9)"); }), ErrorKind::InputError);
    EXPECT_EQ(kind_of([&] { (void)parse_permutation(g, "(C1 C2)(C2 C3)"); }), ErrorKind::InputError);
}
