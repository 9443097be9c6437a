#ifndef GKAT_EQUIVALENCE_HPP
#define GKAT_EQUIVALENCE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gkat/automaton.hpp"

namespace gkat {

/// A replayable witness of non-bisimilarity: feeding the atoms of `word` to
/// both states matches step-for-step until the last atom, where the two
/// observations diverge (different kinds, or steps with different actions).
struct CounterTrace {
    std::vector<Atom> word;
    Outcome left;
    Outcome right;
};

/// A relation satisfying the bisimulation clauses, checkable by direct scan.
struct Bisimulation {
    std::vector<std::pair<int, int>> pairs;  // (state of X, state of Y)
};

struct EquivResult {
    bool equivalent = false;
    Bisimulation witness;   // meaningful when equivalent
    CounterTrace counter;   // meaningful when not
    std::size_t merges = 0;  // union-find merges performed by the decision
};

/// Decides whether (x, y) lies in a bisimulation, by a union-find worklist
/// in the style of Hopcroft and Karp: near-linear in (|X|+|Y|)·|A|.
EquivResult bisimilar(const Automaton& X, int x, const Automaton& Y, int y);

/// Scans the bisimulation clauses over the given pairs.
bool verify_bisimulation(const Automaton& X, const Automaton& Y,
                         const std::vector<std::pair<int, int>>& pairs);

/// Runs both states on the trace's word and confirms the recorded divergence.
bool replay_counter_trace(const Automaton& X, int x, const Automaton& Y, int y,
                          const CounterTrace& t);

/// Program equivalence without the early-termination axiom: bisimilarity of
/// the Brzozowski automata of e and f.
EquivResult equiv0(Context& ctx, ExpPtr e, ExpPtr f);

/// Full program equivalence: bisimilarity after normalizing both derivative
/// automata (steps into dead states become rejections).
EquivResult equiv(Context& ctx, ExpPtr e, ExpPtr f);

struct AxiomResult {
    std::string axiom;
    int samples = 0;
    int failures = 0;
    std::string note;  // describes the first failing instance, if any
};

struct AxiomCheckReport {
    std::vector<AxiomResult> rows;
    bool all_passed() const {
        for (const auto& r : rows)
            if (r.failures > 0) return false;
        return true;
    }
};

/// Random instantiations of each axiom, decided with equiv0 (the early
/// termination axiom S3 is decided with equiv). Loop-fixpoint instances use
/// productive bodies only.
AxiomCheckReport check_axiom_suite(const TestDecl& decl, int samples, uint64_t seed,
                                   int max_depth = 5);

std::string to_string(const CounterTrace& t, const TestDecl& decl);

}  // namespace gkat

#endif  // GKAT_EQUIVALENCE_HPP
