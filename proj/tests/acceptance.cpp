// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance and sample count is pinned here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gkat/coequations.hpp"
#include "gkat/equivalence.hpp"
#include "gkat/generate.hpp"
#include "gkat/parse.hpp"
#include "gkat/trees.hpp"
#include "gkat/wellnested.hpp"

using namespace gkat;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct DeclPool {
    std::vector<std::unique_ptr<Context>> contexts;

    DeclPool() {
        contexts.push_back(std::make_unique<Context>(TestDecl({"t1"}, {"p", "q"})));
        contexts.push_back(std::make_unique<Context>(TestDecl({"t1", "t2"}, {"p", "q"})));
        contexts.push_back(
            std::make_unique<Context>(TestDecl({"t1", "t2", "t3"}, {"p", "q"})));
    }

    Context& pick(Rng& rng) { return *contexts[rng.below(3)]; }
};

// 1. axiom soundness: 3 declarations x 70 samples = 210 instantiations per
// axiom, AST depth <= 5, zero failures, under 60 seconds
bool criterion_axioms(std::string& detail) {
    auto t0 = Clock::now();
    const int per_decl = 70;
    int total_failures = 0;
    std::string first;
    std::vector<TestDecl> decls = {TestDecl({"t1"}, {"p", "q"}),
                                   TestDecl({"t1", "t2"}, {"p", "q"}),
                                   TestDecl({"t1", "t2", "t3"}, {"p", "q"})};
    for (std::size_t d = 0; d < decls.size(); ++d) {
        AxiomCheckReport r = check_axiom_suite(decls[d], per_decl, 1000 + d, 5);
        for (const auto& row : r.rows) {
            total_failures += row.failures;
            if (row.failures && first.empty()) first = row.axiom + ": " + row.note;
        }
    }
    double elapsed = seconds_since(t0);
    detail = "14 axioms x 210 samples, " + std::to_string(total_failures) + " failures, " +
             std::to_string(elapsed) + "s";
    if (!first.empty()) detail += " [first: " + first + "]";
    return total_failures == 0 && elapsed < 60.0;
}

// 2. the two congruences separate exactly on early termination
bool criterion_separation(std::string& detail) {
    Context ctx(TestDecl({"t1"}, {"p", "q"}));
    ExpPtr pzero = parse_exp("p; 0", ctx);
    ExpPtr zero = ctx.zero();
    ExpPtr ploop = parse_exp("while 1 do p", ctx);
    ExpPtr qloop = parse_exp("while 1 do q", ctx);

    EquivResult r0 = equiv0(ctx, pzero, zero);
    bool counter_replays = false;
    if (!r0.equivalent) {
        Automaton a = brzozowski(ctx, pzero).automaton;
        Automaton b = brzozowski(ctx, zero).automaton;
        counter_replays = replay_counter_trace(a, 0, b, 0, r0.counter);
    }
    bool ok = !r0.equivalent && counter_replays && equiv(ctx, pzero, zero).equivalent &&
              !equiv0(ctx, ploop, qloop).equivalent && equiv(ctx, ploop, qloop).equivalent;
    detail = "p;0 vs 0 and diverging loops behave as required";
    return ok;
}

// 3. fundamental round trip on 500 random programs
bool criterion_fundamental(std::string& detail) {
    DeclPool pool;
    Rng rng(2024);
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        Context& ctx = pool.pick(rng);
        ExpPtr e = random_exp(rng, ctx, 3 + rng.below(5));
        if (!equiv0(ctx, e, reconstruct(ctx, e)).equivalent) ++failures;
    }
    detail = "500 samples, " + std::to_string(failures) + " failures";
    return failures == 0;
}

// 4. compositional tree semantics equals derivative unfolding, depths 1..6
bool criterion_bialgebra(std::string& detail) {
    DeclPool pool;
    Rng rng(77);
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
        Context& ctx = pool.pick(rng);
        ExpPtr e = random_exp(rng, ctx, 3 + rng.below(5));
        TreeK direct = eval_tree(ctx, e, 6);
        TreeK via_automaton = unfold(brzozowski(ctx, e).automaton, 0, 6);
        for (int k = 1; k <= 6; ++k)
            if (truncate(direct, k) != truncate(via_automaton, k)) {
                ++failures;
                break;
            }
    }
    detail = "200 samples x depths 1..6, " + std::to_string(failures) + " mismatches";
    return failures == 0;
}

// 5. reachable derivatives never exceed the syntactic bound
bool criterion_local_finiteness(std::string& detail) {
    DeclPool pool;
    Rng rng(4096);
    int violations = 0;
    uint64_t max_states = 0;
    for (int i = 0; i < 500; ++i) {
        Context& ctx = pool.pick(rng);
        ExpPtr e = random_exp(rng, ctx, 3 + rng.below(5));
        uint64_t states = brzozowski(ctx, e).automaton.state_count();
        max_states = std::max(max_states, states);
        if (states > size_bound(e)) ++violations;
    }
    detail = "500 samples, " + std::to_string(violations) +
             " violations, largest automaton " + std::to_string(max_states) + " states";
    return violations == 0;
}

// 6. the four normalization laws, with deadness decided on the automata
bool criterion_normalization(std::string& detail) {
    TestDecl d1({"t1"}, {"p", "q"});
    TestDecl d2({"t1", "t2"}, {"p", "q"});
    Rng rng(31337);
    int failures = 0;
    const int k = 6;
    for (int i = 0; i < 100; ++i) {
        const TestDecl& decl = rng.chance(0.5) ? d1 : d2;
        const std::size_t n_atoms = decl.atom_count();
        Automaton x = random_automaton(rng, decl, 1 + rng.below(4), 0.25, 0.5);
        Automaton y = random_automaton(rng, decl, 1 + rng.below(4), 0.25, 0.5);
        AtomSet b = AtomSet::none(n_atoms);
        for (Atom a = 0; a < n_atoms; ++a)
            if (rng.chance(0.5)) b.insert(a);
        Automaton nx = normalize(x), ny = normalize(y);
        auto norm_of = [&](const Automaton& aut) {
            return normalize_unfolding(aut, aut.start(), k);
        };

        Automaton zero(decl);
        zero.add_state("z");
        zero.set_start(0);

        bool ok =
            norm_of(pointed_union(x, 0, y, 0, b)) == norm_of(pointed_union(nx, 0, ny, 0, b)) &&
            norm_of(pointed_seq(x, 0, y, 0)) == norm_of(pointed_seq(nx, 0, ny, 0)) &&
            norm_of(pointed_seq(x, 0, zero, 0)) == tree_of_test(AtomSet::none(n_atoms), k) &&
            norm_of(pointed_loop(x, 0, b)) == norm_of(pointed_loop(nx, 0, b));
        if (!ok) ++failures;
    }
    detail = "100 pairs x 4 laws at depth 6, " + std::to_string(failures) + " failures";
    return failures == 0;
}

// 7. solving the extracted system reproduces the unfoldings, contracting by
// at most 1/2 per step
bool criterion_salomaa(std::string& detail) {
    TestDecl d1({"t1"}, {"p", "q"});
    TestDecl d2({"t1", "t2"}, {"p", "q"});
    Context c1(d1), c2(d2);
    Rng rng(555);
    int failures = 0;
    const int k = 4;
    for (int i = 0; i < 100; ++i) {
        Context& ctx = rng.chance(0.5) ? c1 : c2;
        ExpPtr e = random_exp(rng, ctx, 4);
        Automaton aut = brzozowski(ctx, e).automaton;
        SalomaaSolveResult r = solve_salomaa(ctx, extract_salomaa(ctx, aut), k);
        bool ok = true;
        for (int s = 0; s < aut.state_count() && ok; ++s)
            ok = r.solution[s] == unfold(aut, s, k);
        for (std::size_t m = 1; m < r.step_distances.size() && ok; ++m)
            ok = r.step_distances[m].at_most_half_of(r.step_distances[m - 1]);
        if (!ok) ++failures;
    }
    detail = "100 systems at depth 4, " + std::to_string(failures) + " failures";
    return failures == 0;
}

// 8. the ping-pong automaton is refuted for every valid guard, and program
// automata always pass
bool criterion_alternation(std::string& detail) {
    TestDecl fig_decl({"t1"}, {"p", "q"});
    bool fig4_ok = true;
    for (Atom a = 0; a < 2; ++a) {
        AtomSet b = AtomSet::single(2, a);  // both b and its complement nonempty
        NestingReport r = check_alternation(fixture_fig4(b));
        fig4_ok = fig4_ok && !r.passed && r.violation && r.violation->x == 0 &&
                  r.violation->y == 1;
    }

    DeclPool pool;
    Rng rng(808);
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        Context& ctx = pool.pick(rng);
        ExpPtr e = random_exp(rng, ctx, 3 + rng.below(5));
        if (!check_alternation(brzozowski(ctx, e).automaton).passed) ++failures;
    }
    detail = std::string("fig4 refuted for both guards: ") + (fig4_ok ? "yes" : "NO") +
             ", 500 program automata, " + std::to_string(failures) + " false alarms";
    return fig4_ok && failures == 0;
}

// 9. the eight-state example: well-nested with an exactly-replaying
// certificate; merged states bisimilar; the image is not well-nested
bool criterion_fig5(std::string& detail) {
    auto t0 = Clock::now();
    Automaton fig5 = fixture_fig5();
    WellNestedResult r = is_wellnested_bounded(fig5, 10);
    bool replay_ok = r.well_nested && same_structure(build_wellnested(*r.cert), fig5);
    bool bisim_ok = bisimilar(fig5, 1, fig5, 4).equivalent &&
                    bisimilar(fig5, 3, fig5, 6).equivalent;
    WellNestedResult rq = is_wellnested_bounded(fixture_fig5_quotient(), 10);
    double elapsed = seconds_since(t0);
    detail = std::string("well-nested: ") + (r.well_nested ? "yes" : "NO") +
             ", replay exact: " + (replay_ok ? "yes" : "NO") +
             ", v1~v4 and v3~v6: " + (bisim_ok ? "yes" : "NO") +
             ", image well-nested: " + (rq.well_nested ? "YES (wrong)" : "no") + ", " +
             std::to_string(elapsed) + "s";
    return r.well_nested && replay_ok && bisim_ok && !rq.well_nested && elapsed < 120.0;
}

// 10. near-linear scaling on chains of 10^2 / 10^3 / 10^4 AST nodes
bool criterion_scaling(std::string& detail) {
    auto chain_time = [](int nodes) {
        const int actions = (nodes + 1) / 2;
        double best = 1e100;
        for (int rep = 0; rep < 3; ++rep) {
            Context ctx(TestDecl({"t1"}, {"p", "q"}));
            ExpPtr e = ctx.act("p");
            for (int i = 1; i < actions; ++i) e = ctx.seq(ctx.act("p"), e);
            auto t0 = Clock::now();
            EquivResult r = equiv0(ctx, e, e);
            double dt = seconds_since(t0);
            if (!r.equivalent) return -1.0;
            best = std::min(best, dt);
        }
        return best;
    };
    double t2 = chain_time(100), t3 = chain_time(1000), t4 = chain_time(10000);
    if (t2 < 0 || t3 < 0 || t4 < 0) {
        detail = "self-equivalence failed";
        return false;
    }
    // a decade of size may cost at most 2x a decade of time
    double f1 = t3 / std::max(t2, 1e-9) / 10.0;
    double f2 = t4 / std::max(t3, 1e-9) / 10.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "times %.3gs/%.3gs/%.3gs, superlinearity factors %.2f and %.2f", t2, t3,
                  t4, f1, f2);
    detail = buf;
    return f1 < 2.0 && f2 < 2.0;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<bool(std::string&)> run;
    };
    std::vector<Criterion> criteria = {
        {1, "axiom soundness suite", criterion_axioms},
        {2, "separation of the two congruences", criterion_separation},
        {3, "fundamental round trip", criterion_fundamental},
        {4, "tree semantics agrees with unfolding", criterion_bialgebra},
        {5, "local finiteness bound", criterion_local_finiteness},
        {6, "normalization laws", criterion_normalization},
        {7, "left-affine system solving", criterion_salomaa},
        {8, "alternation refutation and program automata", criterion_alternation},
        {9, "eight-state example and its image", criterion_fig5},
        {10, "near-linear scaling", criterion_scaling},
    };

    int failed = 0;
    for (auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s — %s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
