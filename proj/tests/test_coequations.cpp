#include "doctest.h"

#include "gkat/coequations.hpp"
#include "gkat/generate.hpp"
#include "gkat/parse.hpp"
#include "gkat/wellnested.hpp"

using namespace gkat;

TEST_CASE("discreteness") {
    Context ctx(TestDecl({"t1"}, {"p", "q"}));
    CHECK(check_discrete(brzozowski(ctx, ctx.test(BExp::prim(0))).automaton));
    CHECK_FALSE(check_discrete(brzozowski(ctx, ctx.act("p")).automaton));
    CHECK_FALSE(check_discrete(fixture_fig4()));
}

TEST_CASE("the ping-pong automaton violates the alternation condition") {
    TestDecl decl({"t1"}, {"p", "q"});
    for (const char* guard : {"t1", "!t1"}) {
        AtomSet b = denote(*parse_bexp(guard, decl), decl);
        Automaton fig4 = fixture_fig4(b);
        NestingReport r = check_alternation(fig4);
        REQUIRE_FALSE(r.passed);
        REQUIRE(r.violation.has_value());
        CHECK(r.violation->scc == std::vector<int>{0, 1});
        CHECK(r.violation->x == 0);
        CHECK(r.violation->y == 1);
        CHECK(r.violation->accept_of_x ==
              fig4.accept_set(r.violation->y).complement());
    }
}

TEST_CASE("alternation passes where no complementary pair cycles") {
    Automaton loop = fixture_ploop();
    CHECK(check_alternation(loop).passed);

    Context ctx(TestDecl({"t1"}, {"p"}));
    CHECK(check_alternation(brzozowski(ctx, ctx.test(BExp::prim(0))).automaton).passed);
}

TEST_CASE("derivative automata of programs always pass") {
    TestDecl decl({"t1", "t2"}, {"p", "q"});
    Context ctx(decl);
    Rng rng(101);
    for (int i = 0; i < 150; ++i) {
        ExpPtr e = random_exp(rng, ctx, 5);
        CHECK(check_alternation(brzozowski(ctx, e).automaton).passed);
    }
}

TEST_CASE("the check agrees with a pairwise reachability oracle") {
    // a violation is two distinct, mutually step-reachable states with
    // complementary accept sets (mutual reachability already implies a cycle)
    TestDecl decl({"t1"}, {"p", "q"});
    Rng rng(113);
    for (int i = 0; i < 150; ++i) {
        Automaton x = random_automaton(rng, decl, 1 + rng.below(6), 0.35, 0.5);
        x.clear_start();
        bool oracle = false;
        for (int a = 0; a < x.state_count() && !oracle; ++a)
            for (int b = a + 1; b < x.state_count() && !oracle; ++b)
                oracle = reachable_from(x, a)[b] && reachable_from(x, b)[a] &&
                         x.accept_set(a) == x.accept_set(b).complement();
        NestingReport r = check_alternation(x);
        CHECK(r.passed == !oracle);
        if (r.violation) {
            CHECK(x.accept_set(r.violation->x) ==
                  x.accept_set(r.violation->y).complement());
            CHECK(reachable_from(x, r.violation->x)[r.violation->y]);
            CHECK(reachable_from(x, r.violation->y)[r.violation->x]);
        }
    }
}

TEST_CASE("the violation survives the bisimilarity quotient") {
    // v0 and v1 are not bisimilar, so the quotient keeps the alternating cycle
    Automaton fig4 = fixture_fig4();
    QuotientResult q = quotient_by_bisimilarity(fig4);
    CHECK(q.automaton.state_count() == 2);
    NestingReport r = check_alternation(q.automaton);
    CHECK_FALSE(r.passed);
}

TEST_CASE("unreachable states do not trigger violations") {
    Automaton fig4 = fixture_fig4();
    // same structure, but the start only reaches an all-accept state
    Automaton aut(fig4.decl());
    int top = aut.add_state("top");
    aut.add_state("v0");
    aut.add_state("v1");
    for (Atom a = 0; a < 2; ++a) aut.set_outcome(top, a, Outcome::accept());
    aut.set_outcome(1, 1, Outcome::step(0, 2));
    aut.set_outcome(1, 0, Outcome::accept());
    aut.set_outcome(2, 0, Outcome::step(1, 1));
    aut.set_outcome(2, 1, Outcome::accept());
    aut.set_start(top);
    CHECK(check_alternation(aut).passed);
    aut.clear_start();  // without a start, every state counts
    CHECK_FALSE(check_alternation(aut).passed);
}
