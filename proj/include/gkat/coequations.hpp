#ifndef GKAT_COEQUATIONS_HPP
#define GKAT_COEQUATIONS_HPP

#include <optional>
#include <vector>

#include "gkat/automaton.hpp"

namespace gkat {

/// True iff no state has a step outcome: every behavior is a test.
bool check_discrete(const Automaton& x);

/// Two states on a step-cycle whose accept sets are exact complements. Any
/// such pair pins an infinite branch that alternates between accepting b and
/// its complement forever, which no program behavior does.
struct NestingViolation {
    std::vector<int> scc;  // the strongly connected component holding the pair
    int x = -1;
    int y = -1;
    AtomSet accept_of_x;
};

struct NestingReport {
    bool passed = true;
    std::optional<NestingViolation> violation;
};

/// Necessary condition for all behaviors of the automaton to be program
/// behaviors: no cyclic SCC of the step graph (restricted to the states
/// reachable from the start, when one is set) may contain two states with
/// complementary accept sets. Passing is necessary, not sufficient.
NestingReport check_alternation(const Automaton& x);

}  // namespace gkat

#endif  // GKAT_COEQUATIONS_HPP
