#ifndef GKAT_TREES_HPP
#define GKAT_TREES_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkat/automaton.hpp"

namespace gkat {

/// Label at a tree node: termination (0/1) or an emitted action.
struct TreeVal {
    enum class Kind : uint8_t { Zero, One, Act };

    Kind kind = Kind::Zero;
    int action = -1;

    static TreeVal zero() { return {}; }
    static TreeVal one() { return {Kind::One, -1}; }
    static TreeVal act(int a) { return {Kind::Act, a}; }

    bool is_act() const { return kind == Kind::Act; }
    bool operator==(const TreeVal&) const = default;
};

/// A word of atoms, one char16_t per atom index.
using Word = std::u16string;

/// length-then-lex order; also the dump order
struct ShortLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Depth-k truncation of a behavior tree: a partial map from atom words of
/// length 1..k to {0, 1} or an action, subject to the usual domain rules
/// (every length-1 word present; words extend exactly under action labels).
class TreeK {
public:
    TreeK(int depth, std::size_t n_atoms);

    int depth() const { return depth_; }
    std::size_t atom_universe() const { return n_atoms_; }

    const std::map<Word, TreeVal, ShortLex>& table() const { return table_; }
    std::optional<TreeVal> at(const Word& w) const;
    void set(const Word& w, TreeVal v);

    bool operator==(const TreeK& other) const {
        return depth_ == other.depth_ && n_atoms_ == other.n_atoms_ && table_ == other.table_;
    }
    bool operator!=(const TreeK& other) const { return !(*this == other); }

    /// Throws std::logic_error when the domain rules are violated.
    void validate() const;

private:
    int depth_;
    std::size_t n_atoms_;
    std::map<Word, TreeVal, ShortLex> table_;
};

/// Depth-j truncation of t (j <= depth).
TreeK truncate(const TreeK& t, int j);

/// The subtree hanging off a node word (value at the word must be an action).
TreeK subtree(const TreeK& t, const Word& w);

/// delta*: the depth-k unfolding of an automaton state.
TreeK unfold(const Automaton& x, int state, int k);

/// Compositional semantics of an expression, evaluated to depth k by the
/// behavioral differential equations (independent of the automaton route).
TreeK eval_tree(Context& ctx, ExpPtr e, int k);

/// The constant trees [[b]] and the all-reject / all-accept trees.
TreeK tree_of_test(const AtomSet& b, int k);

// The algebraic operations on truncations. Sequencing and guarded union
// produce min(depth(s), depth(t)); loop keeps its input depth; continuation
// takes the min of its inputs. Entries undetermined at the horizon are
// simply absent, never guessed.
TreeK tree_seq(const TreeK& s, const TreeK& t);
TreeK tree_union(const TreeK& s, const TreeK& t, const AtomSet& b);
TreeK tree_loop(const TreeK& t, const AtomSet& b);
TreeK tree_cont(const TreeK& s, const TreeK& t);

/// The one-step part of t: keeps action entries and their subtrees, turns
/// length-1 termination entries into 0.
TreeK tree_step_part(const TreeK& t);

/// Atoms a with t(a) = 1.
AtomSet accept_set(const TreeK& t);

/// The filter t|>P: entries whose subtree satisfies the predicate become 0.
TreeK prune(const TreeK& t, const std::function<bool(const TreeK&)>& pred);

/// Normalization with horizon-approximate deadness ("no accepting leaf
/// within the remaining depth"); exact is false to flag the approximation.
struct NormalizedTree {
    TreeK tree;
    bool exact;
};
NormalizedTree normalize_tree(const TreeK& t);

/// Normalization of an unfolding with deadness decided exactly on the source
/// automaton: prunes a step entry iff the target state is dead.
TreeK normalize_unfolding(const Automaton& x, int state, int k);

/// 2^-m where m is the length of the shortest disagreement; words present in
/// only one domain count at their longest commonly-defined prefix.
struct TreeDistance {
    bool is_zero = true;
    int exponent = 0;  // distance = 2^-exponent when not zero

    double value() const;
    bool operator==(const TreeDistance&) const = default;

    /// this <= (1/2) * other
    bool at_most_half_of(const TreeDistance& other) const;
};
TreeDistance tree_distance(const TreeK& s, const TreeK& t);

/// One line per domain word, "w -> value", in length-then-lex order; atoms
/// joined with '.'.
std::string dump(const TreeK& t, const TestDecl& decl);

// ---- Left-affine systems with productive coefficients ----

struct SalomaaTerm {
    int var;        // column index
    AtomSet guard;  // b_ij
    ExpPtr coeff;   // e_ij, must be productive
};

struct SalomaaRow {
    std::vector<SalomaaTerm> terms;  // guards pairwise disjoint
    AtomSet constant;                // c_i, disjoint from all guards
};

struct SalomaaSystem {
    std::vector<SalomaaRow> rows;
    int size() const { return static_cast<int>(rows.size()); }
};

/// Throws std::invalid_argument on non-productive coefficients, overlapping
/// guards, or out-of-range variables.
void validate_salomaa(const SalomaaSystem& sys, const TestDecl& decl);

/// The system read off an automaton: per row i, a term (guard = atoms
/// stepping i -> j, coefficient = the guarded sum of the actions taken) for
/// every reached j, plus the accept set as the constant.
SalomaaSystem extract_salomaa(Context& ctx, const Automaton& x);

struct SalomaaSolveResult {
    std::vector<TreeK> solution;
    std::vector<TreeDistance> step_distances;  // d(u_{m+1}, u_m), per iteration
    int iterations = 0;
};

/// Fixed-point iteration from the all-reject tuple; the map contracts with
/// scalar 1/2, so the depth-k truncation is exact after at most k+1 steps
/// (the loop runs until the iterates agree).
SalomaaSolveResult solve_salomaa(Context& ctx, const SalomaaSystem& sys, int k);

}  // namespace gkat

#endif  // GKAT_TREES_HPP
