#ifndef GKAT_BEXP_HPP
#define GKAT_BEXP_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gkat {

/// A complete truth assignment to the declared primitive tests, packed as a
/// bitmask: bit i holds the value of the i-th declared test.
using Atom = uint32_t;

/// Declaration of the two-sorted alphabet: primitive tests and actions.
/// Test and action names must be disjoint and duplicate-free. The number of
/// tests is capped (default 10) so that the atom set stays enumerable.
class TestDecl {
public:
    static constexpr int kDefaultMaxTests = 10;

    TestDecl(std::vector<std::string> tests, std::vector<std::string> actions,
             int max_tests = kDefaultMaxTests);

    int test_count() const { return static_cast<int>(tests_.size()); }
    int action_count() const { return static_cast<int>(actions_.size()); }
    std::size_t atom_count() const { return std::size_t{1} << tests_.size(); }

    const std::vector<std::string>& tests() const { return tests_; }
    const std::vector<std::string>& actions() const { return actions_; }

    /// -1 when the name is not declared.
    int test_index(const std::string& name) const;
    int action_index(const std::string& name) const;

    const std::string& test_name(int i) const { return tests_.at(i); }
    const std::string& action_name(int i) const { return actions_.at(i); }

    /// Canonical atom spelling: each test in declaration order, prefixed with
    /// '!' when false, e.g. "t1!t2". With no declared tests the single atom
    /// is spelled "1".
    std::string atom_label(Atom a) const;
    /// Inverse of atom_label; throws std::invalid_argument on bad input.
    Atom parse_atom_label(const std::string& label) const;

    bool operator==(const TestDecl& other) const;
    bool operator!=(const TestDecl& other) const { return !(*this == other); }

private:
    std::vector<std::string> tests_;
    std::vector<std::string> actions_;
};

/// A subset of the atom set of a fixed TestDecl, stored as a bit-set over the
/// 2^|T| atoms. Operations on sets over different universes throw.
class AtomSet {
public:
    AtomSet() = default;
    static AtomSet none(std::size_t n_atoms);
    static AtomSet all(std::size_t n_atoms);
    static AtomSet single(std::size_t n_atoms, Atom a);

    std::size_t universe() const { return n_; }
    bool contains(Atom a) const;
    void insert(Atom a);
    void erase(Atom a);

    AtomSet complement() const;
    bool is_empty() const;
    bool is_all() const;
    std::size_t count() const;

    std::vector<Atom> to_vector() const;

    bool disjoint_with(const AtomSet& other) const;
    bool operator==(const AtomSet& other) const;
    bool operator!=(const AtomSet& other) const { return !(*this == other); }

    friend AtomSet intersect(const AtomSet& a, const AtomSet& b);
    friend AtomSet unite(const AtomSet& a, const AtomSet& b);

    std::size_t hash() const;

private:
    void check_same_universe(const AtomSet& other) const;

    std::size_t n_ = 0;
    std::vector<uint64_t> bits_;
};

AtomSet intersect(const AtomSet& a, const AtomSet& b);
AtomSet unite(const AtomSet& a, const AtomSet& b);

/// Boolean test expression over the declared primitive tests.
struct BExp;
using BExpPtr = std::shared_ptr<const BExp>;

struct BExp {
    enum class Kind : uint8_t { Zero, One, Test, Not, And, Or };

    Kind kind;
    int test = -1;  // Kind::Test: index into the TestDecl
    BExpPtr lhs, rhs;

    static BExpPtr zero();
    static BExpPtr one();
    static BExpPtr prim(int test_index);
    static BExpPtr negate(BExpPtr b);
    static BExpPtr conj(BExpPtr a, BExpPtr b);
    static BExpPtr disj(BExpPtr a, BExpPtr b);
};

/// Truth-table evaluation of b under a single atom.
bool eval(const BExp& b, Atom a);

/// The set of atoms satisfying b, computed by structural set algebra
/// (independent of eval, which serves as its oracle).
AtomSet denote(const BExp& b, const TestDecl& decl);

/// The conjunction of literals spelling one atom.
BExpPtr atom_to_bexp(Atom a, const TestDecl& decl);
/// A canonical Boolean expression denoting the given set: 0, 1, or the
/// disjunction of its atoms in ascending order.
BExpPtr atom_set_to_bexp(const AtomSet& s, const TestDecl& decl);

std::string to_string(const BExp& b, const TestDecl& decl);

/// Renders an atom set for reports: "{}", "{t1!t2,t1t2}", or "A".
std::string atom_set_to_string(const AtomSet& s, const TestDecl& decl);

}  // namespace gkat

#endif  // GKAT_BEXP_HPP
