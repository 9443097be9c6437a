#ifndef GKAT_WELLNESTED_HPP
#define GKAT_WELLNESTED_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gkat/automaton.hpp"

namespace gkat {

/// Derivation tree for membership in the well-nested class: a leaf holds a
/// finite discrete automaton; a node splits the states into an X part and a
/// transition-closed Y part, records the continuation map h and which X-part
/// entries had their accepts restored, and recurses on both parts. Replaying
/// a certificate (coproduct of the children, then uniform continuation of h
/// along the X part) rebuilds the certified automaton state-for-state.
struct WellNestedCert {
    struct HEntry {
        Outcome::Kind kind = Outcome::Kind::Reject;
        std::string action;  // Step
        std::string target;  // Step
    };

    bool is_leaf = false;
    std::optional<Automaton> discrete;  // leaf payload

    std::vector<std::string> x_states, y_states;
    std::vector<HEntry> h;  // indexed by atom
    std::vector<std::pair<std::string, Atom>> restorations;  // accepts introduced in X
    std::shared_ptr<const WellNestedCert> x_child, y_child;
};

using CertPtr = std::shared_ptr<const WellNestedCert>;

/// Replays a derivation; throws std::invalid_argument when it is ill-formed
/// (non-discrete leaf, clashing state names, dangling h targets).
Automaton build_wellnested(const WellNestedCert& cert);

struct WellNestedResult {
    bool well_nested = false;
    CertPtr cert;  // present when well nested
};

/// Exhaustive bounded search: the automaton is well-nested iff it is
/// discrete, or some split (X, Y) with Y transition-closed, some continuation
/// map and some restoration of overwritten accepts expresses it as
/// (X + Y)[X, h] with both parts recursively well-nested. Memoized on a
/// canonical encoding; throws when the automaton exceeds max_states.
WellNestedResult is_wellnested_bounded(const Automaton& x, int max_states = 10);

std::string to_string(const WellNestedCert& cert, const TestDecl& decl);

// ---- worked fixtures ----

/// Two states ping-ponging between accepting b and its complement; exhibits
/// no program behavior when both b and its complement are nonempty.
/// Tests {t1}, actions {p, q}; b given as a subset of the two atoms.
Automaton fixture_fig4(const AtomSet& b);
Automaton fixture_fig4();  // b = {t1}

/// The eight-state well-nested automaton over tests {t1,t2} (atoms a0..a3 in
/// ascending order) whose six-state homomorphic image is not well-nested.
/// Every edge carries the single action p.
Automaton fixture_fig5();

/// The image of fixture_fig5 under merging v1 with v4 and v3 with v6.
Automaton fixture_fig5_quotient();

/// The two-state unrolling of the guarded loop on one action: both states
/// accept outside b and step with p into the looping state on b.
Automaton fixture_ploop(const AtomSet& b);
Automaton fixture_ploop();  // b = {t1}

std::vector<std::string> fixture_names();
Automaton fixture_by_name(const std::string& name);

}  // namespace gkat

#endif  // GKAT_WELLNESTED_HPP
