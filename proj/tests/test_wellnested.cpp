#include "doctest.h"

#include <functional>

#include "gkat/coequations.hpp"
#include "gkat/equivalence.hpp"
#include "gkat/generate.hpp"
#include "gkat/parse.hpp"
#include "gkat/wellnested.hpp"

using namespace gkat;

TEST_CASE("discrete automata are leaves") {
    Context ctx(TestDecl({"t1"}, {"p"}));
    Automaton d = brzozowski(ctx, ctx.test(BExp::prim(0))).automaton;
    WellNestedResult r = is_wellnested_bounded(d);
    REQUIRE(r.well_nested);
    CHECK(r.cert->is_leaf);
    Automaton replay = build_wellnested(*r.cert);
    CHECK(same_structure(replay, d));
}

TEST_CASE("the guarded loop automaton is well-nested") {
    Automaton loop = fixture_ploop();
    WellNestedResult r = is_wellnested_bounded(loop);
    REQUIRE(r.well_nested);
    CHECK(same_structure(build_wellnested(*r.cert), loop));
}

TEST_CASE("the eight-state example is well-nested, its image is not") {
    Automaton fig5 = fixture_fig5();
    WellNestedResult r = is_wellnested_bounded(fig5);
    REQUIRE(r.well_nested);
    CHECK(same_structure(build_wellnested(*r.cert), fig5));
    CHECK(!to_string(*r.cert, fig5.decl()).empty());

    // the states merged by the homomorphism really are bisimilar
    CHECK(bisimilar(fig5, 1, fig5, 4).equivalent);
    CHECK(bisimilar(fig5, 3, fig5, 6).equivalent);

    Automaton image = fixture_fig5_quotient();
    CHECK_FALSE(is_wellnested_bounded(image).well_nested);
}

TEST_CASE("hand-built continuation produces a loop followed by an action") {
    // X = one all-accepting state m, Y = one all-accepting state f,
    // h sends the loop guard back into m with p and exits into f with q:
    // the result behaves as (while t1 do p); q
    TestDecl decl({"t1"}, {"p", "q"});
    Context ctx(decl);
    Atom in_b = decl.parse_atom_label("t1");

    auto leaf = [&](const std::string& name) {
        auto cert = std::make_shared<WellNestedCert>();
        cert->is_leaf = true;
        Automaton aut(decl);
        aut.add_state(name);
        for (Atom a = 0; a < decl.atom_count(); ++a)
            aut.set_outcome(0, a, Outcome::accept());
        cert->discrete = aut;
        return cert;
    };

    WellNestedCert node;
    node.x_states = {"m"};
    node.y_states = {"f"};
    node.h.resize(decl.atom_count());
    for (Atom a = 0; a < decl.atom_count(); ++a) {
        if (a == in_b)
            node.h[a] = {Outcome::Kind::Step, "p", "m"};
        else
            node.h[a] = {Outcome::Kind::Step, "q", "f"};
    }
    node.x_child = leaf("m");
    node.y_child = leaf("f");

    Automaton built = build_wellnested(node);
    REQUIRE(built.state_count() == 2);
    Automaton want = brzozowski(ctx, parse_exp("(while t1 do p); q", ctx)).automaton;
    CHECK(bisimilar(built, built.state_index("m"), want, 0).equivalent);
}

TEST_CASE("replay validates its inputs") {
    TestDecl decl({"t1"}, {"p"});
    WellNestedCert bad;
    bad.is_leaf = true;
    bad.discrete = fixture_ploop();  // not discrete
    CHECK_THROWS_AS(build_wellnested(bad), std::invalid_argument);
}

TEST_CASE("search results replay exactly and satisfy the nesting condition") {
    TestDecl decl({"t1"}, {"p", "q"});
    Rng rng(103);
    int found = 0;
    for (int i = 0; i < 60; ++i) {
        Automaton x = random_automaton(rng, decl, 1 + rng.below(4), 0.35, 0.45);
        x.clear_start();
        WellNestedResult r = is_wellnested_bounded(x);
        if (!r.well_nested) continue;
        ++found;
        Automaton replay = build_wellnested(*r.cert);
        CHECK(same_structure(replay, x));
        CHECK(check_alternation(replay).passed);
    }
    CHECK(found > 0);
}

TEST_CASE("the search recognizes randomly constructed derivations") {
    // anything a derivation can build must come back well-nested
    TestDecl decl({"t1"}, {"p", "q"});
    Rng rng(211);
    int counter = 0;

    std::function<CertPtr(int)> random_cert = [&](int budget) -> CertPtr {
        if (budget <= 1 || rng.chance(0.45)) {
            auto leaf = std::make_shared<WellNestedCert>();
            leaf->is_leaf = true;
            Automaton aut(decl);
            int n = 1 + rng.below(std::max(1, budget));
            for (int s = 0; s < n; ++s) aut.add_state("d" + std::to_string(counter++));
            for (int s = 0; s < n; ++s)
                for (Atom a = 0; a < decl.atom_count(); ++a)
                    if (rng.chance(0.5)) aut.set_outcome(s, a, Outcome::accept());
            leaf->discrete = aut;
            return leaf;
        }
        int left = 1 + rng.below(budget - 1);
        auto node = std::make_shared<WellNestedCert>();
        node->x_child = random_cert(left);
        node->y_child = random_cert(budget - left);
        Automaton x1 = build_wellnested(*node->x_child);
        Automaton y1 = build_wellnested(*node->y_child);
        for (int s = 0; s < x1.state_count(); ++s)
            node->x_states.push_back(x1.state_name(s));
        for (int s = 0; s < y1.state_count(); ++s)
            node->y_states.push_back(y1.state_name(s));
        std::vector<std::string> all = node->x_states;
        all.insert(all.end(), node->y_states.begin(), node->y_states.end());
        node->h.resize(decl.atom_count());
        for (Atom a = 0; a < decl.atom_count(); ++a) {
            switch (rng.below(3)) {
                case 0: node->h[a].kind = Outcome::Kind::Reject; break;
                case 1: node->h[a].kind = Outcome::Kind::Accept; break;
                default:
                    node->h[a].kind = Outcome::Kind::Step;
                    node->h[a].action = decl.action_name(rng.below(decl.action_count()));
                    node->h[a].target = all[rng.below(static_cast<int>(all.size()))];
            }
        }
        return node;
    };

    for (int i = 0; i < 40; ++i) {
        CertPtr cert = random_cert(2 + rng.below(5));
        Automaton built = build_wellnested(*cert);
        if (built.state_count() > 8) continue;
        WellNestedResult r = is_wellnested_bounded(built);
        CHECK(r.well_nested);
        if (r.well_nested) CHECK(same_structure(build_wellnested(*r.cert), built));
    }
}

TEST_CASE("the state bound is enforced") {
    TestDecl decl({"t1"}, {"p"});
    Rng rng(109);
    Automaton big = random_automaton(rng, decl, 12, 0.3, 0.4);
    CHECK_THROWS_AS(is_wellnested_bounded(big, 10), std::invalid_argument);
}

TEST_CASE("fixtures are available by name") {
    for (const std::string& name : fixture_names()) CHECK_NOTHROW(fixture_by_name(name));
    CHECK_THROWS_AS(fixture_by_name("nope"), std::invalid_argument);
}

TEST_CASE("the eight-state fixture carries exactly the depicted structure") {
    Automaton fig5 = fixture_by_name("fig5");
    REQUIRE(fig5.state_count() == 8);
    const Atom a0 = 0, a1 = 1, a2 = 2, a3 = 3;
    auto v = [&](int i) { return fig5.state_index("v" + std::to_string(i)); };
    const int p = 0;

    CHECK(fig5.outcome(v(0), a3) == Outcome::step(p, v(1)));
    CHECK(fig5.outcome(v(0), a2) == Outcome::step(p, v(2)));
    CHECK(fig5.outcome(v(2), a2) == Outcome::step(p, v(0)));
    CHECK(fig5.outcome(v(2), a3) == Outcome::step(p, v(3)));
    CHECK(fig5.outcome(v(5), a0) == Outcome::step(p, v(4)));
    CHECK(fig5.outcome(v(5), a1) == Outcome::step(p, v(7)));
    CHECK(fig5.outcome(v(7), a1) == Outcome::step(p, v(5)));
    CHECK(fig5.outcome(v(7), a0) == Outcome::step(p, v(6)));

    AtomSet low = AtomSet::none(4), high = AtomSet::none(4);
    low.insert(a0);
    low.insert(a1);
    high.insert(a2);
    high.insert(a3);
    CHECK(fig5.accept_set(v(0)) == low);
    CHECK(fig5.accept_set(v(2)) == low);
    CHECK(fig5.accept_set(v(5)) == high);
    CHECK(fig5.accept_set(v(7)) == high);
    for (int dead : {1, 3, 4, 6})
        for (Atom a = 0; a < 4; ++a)
            CHECK(fig5.outcome(v(dead), a) == Outcome::reject());
}
