#ifndef GKAT_AUTOMATON_HPP
#define GKAT_AUTOMATON_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "gkat/syntax.hpp"

namespace gkat {

/// What a state does on one atom: reject, accept, or emit an action and move.
struct Outcome {
    enum class Kind : uint8_t { Reject, Accept, Step };

    Kind kind = Kind::Reject;
    int action = -1;
    int target = -1;

    static Outcome reject() { return {}; }
    static Outcome accept() { return {Kind::Accept, -1, -1}; }
    static Outcome step(int action, int target) { return {Kind::Step, action, target}; }

    bool is_step() const { return kind == Kind::Step; }
    bool operator==(const Outcome&) const = default;
};

/// A finite GKAT-automaton: named states with a total transition function
/// state x atom -> reject | accept | (action, state). Unset entries are
/// reject. Values are immutable once built; all combinators return new
/// automata.
class Automaton {
public:
    explicit Automaton(TestDecl decl);

    const TestDecl& decl() const { return decl_; }
    int state_count() const { return static_cast<int>(names_.size()); }

    int add_state(const std::string& name);
    int state_index(const std::string& name) const;  // -1 if unknown
    const std::string& state_name(int s) const { return names_.at(s); }
    const std::vector<std::string>& state_names() const { return names_; }

    bool has_start() const { return start_ >= 0; }
    int start() const { return start_; }
    void set_start(int s);
    void clear_start() { start_ = -1; }

    Outcome outcome(int state, Atom a) const;
    void set_outcome(int state, Atom a, Outcome o);
    const std::vector<Outcome>& row(int state) const { return delta_.at(state); }

    /// Atoms the state accepts.
    AtomSet accept_set(int state) const;
    bool has_any_step(int state) const;

private:
    TestDecl decl_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<Outcome>> delta_;
    int start_ = -1;
};

/// One Brzozowski derivative step of an expression on an atom.
struct Derivative {
    Outcome::Kind kind = Outcome::Kind::Reject;
    int action = -1;
    ExpPtr target = nullptr;
};
Derivative derive(Context& ctx, ExpPtr e, Atom a);

/// The automaton of interned derivatives reachable from e; states are named
/// s0, s1, ... in discovery order, s0 is the start and carries e itself.
struct BrzozowskiResult {
    Automaton automaton;
    std::vector<ExpPtr> exprs;  // per state
};
BrzozowskiResult brzozowski(Context& ctx, ExpPtr e);

/// The fundamental-theorem round trip: 1 +_{E(e)} (sum of p_a . e_a over the
/// transitions of e), with atoms taken in ascending canonical order.
ExpPtr reconstruct(Context& ctx, ExpPtr e);

/// Disjoint union. State names are kept when the two name sets are disjoint
/// and prefixed with "0:" / "1:" otherwise.
Automaton coproduct(const Automaton& x, const Automaton& y);

/// Replaces the accepting entries of every state in u by h; everything else
/// is untouched. h is indexed by atom and may target any state of x.
Automaton uniform_continuation(const Automaton& x, const std::vector<int>& u,
                               const std::vector<Outcome>& h);

/// States reachable from s through step transitions (s included).
std::vector<bool> reachable_from(const Automaton& x, int s);

/// The subautomaton on the given states, which must be closed under steps.
Automaton restrict_to(const Automaton& x, const std::vector<int>& states);

struct QuotientResult {
    Automaton automaton;
    std::vector<int> class_of;  // state -> class index
};

/// Quotient by full bisimilarity, computed by partition refinement seeded
/// with per-atom outcome signatures. Class names join member names with '+'.
QuotientResult quotient_by_bisimilarity(const Automaton& x);

/// Quotient by a caller-supplied partition, which must be a congruence
/// (members of a class must agree on accept/reject and step into a common
/// class with the same action); throws otherwise.
QuotientResult quotient_by_partition(const Automaton& x, const std::vector<int>& class_of);

/// A state is dead when no accepting entry is reachable from it (itself
/// included) through step transitions.
std::vector<bool> dead_states(const Automaton& x);

/// Replaces every step into a dead state by reject. Accept entries are never
/// touched and no step is ever added; idempotent.
Automaton normalize(const Automaton& x);

/// Pointed constructions mirroring the tree operations: the unfolding of the
/// result's start equals the corresponding operation applied to the
/// unfoldings of (x, sx) and (y, sy).
Automaton pointed_seq(const Automaton& x, int sx, const Automaton& y, int sy);
Automaton pointed_union(const Automaton& x, int sx, const Automaton& y, int sy,
                        const AtomSet& b);
Automaton pointed_loop(const Automaton& x, int sx, const AtomSet& b);

/// JSON schema:
///   {"tests":[...], "actions":[...], "states":[...], "start":"...",
///    "delta":{state:{atomLabel:"accept"|"reject"|{"act":name,"to":state}}}}
/// Omitted atoms mean reject; "start" may be absent.
Automaton import_json(const std::string& text);
std::string export_json(const Automaton& x);

/// Graphviz rendering; accepted atoms hang off each state as a double-lined
/// edge to a plaintext set node, step edges are labelled "atoms|action".
std::string export_dot(const Automaton& x);

/// Identical declaration, state list (same order), start and delta.
bool equal_exact(const Automaton& a, const Automaton& b);
/// Same states by name with the same outcomes (targets compared by name),
/// ignoring state order and start.
bool same_structure(const Automaton& a, const Automaton& b);

}  // namespace gkat

#endif  // GKAT_AUTOMATON_HPP
