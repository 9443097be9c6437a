#ifndef GKAT_SYNTAX_HPP
#define GKAT_SYNTAX_HPP

#include <cstdint>
#include <deque>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "gkat/bexp.hpp"

namespace gkat {

/// Program expression node. Nodes are interned per Context: two structurally
/// equal programs (guards compared by their atom-set denotation) are the same
/// pointer, so pointer equality is expression equality. This is what the
/// derivative closure relies on.
struct Exp {
    enum class Kind : uint8_t { Test, Act, Seq, IfThenElse, While };

    Kind kind;
    int action = -1;       // Act
    BExpPtr guard_syntax;  // Test / IfThenElse / While; kept for display only
    AtomSet guard;         // denotation of guard_syntax
    const Exp* lhs = nullptr;
    const Exp* rhs = nullptr;

    AtomSet accept_now;  // the termination condition E(e), precomputed
    uint64_t bound = 0;  // the derivative-count bound #(e)
    uint64_t id = 0;     // intern id, unique within the owning Context
};

using ExpPtr = const Exp*;

/// Owns a test/action declaration plus the intern table for expressions over
/// it. Expressions are valid as long as their Context lives. Construction is
/// thread safe: lookups take a shared lock, insertions an exclusive one.
class Context {
public:
    explicit Context(TestDecl decl);
    Context(const Context&) = delete;
    Context& operator=(const Context&) = delete;

    const TestDecl& decl() const { return decl_; }

    ExpPtr test(BExpPtr b);
    ExpPtr test(const AtomSet& set);  // synthesizes a canonical guard spelling
    ExpPtr zero();
    ExpPtr one();
    ExpPtr act(int action);
    ExpPtr act(const std::string& name);
    ExpPtr seq(ExpPtr lhs, ExpPtr rhs);
    ExpPtr ifte(BExpPtr b, ExpPtr lhs, ExpPtr rhs);
    ExpPtr ifte(const AtomSet& b, ExpPtr lhs, ExpPtr rhs);
    ExpPtr loop(BExpPtr b, ExpPtr body);
    ExpPtr loop(const AtomSet& b, ExpPtr body);

    std::size_t interned_count() const;

private:
    struct Key {
        Exp::Kind kind;
        int action;
        std::size_t guard_hash;
        AtomSet guard;
        uint64_t lhs_id;
        uint64_t rhs_id;
        bool operator==(const Key& o) const {
            return kind == o.kind && action == o.action && lhs_id == o.lhs_id &&
                   rhs_id == o.rhs_id && guard == o.guard;
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ull;
            h = h * 0x100000001b3ull ^ static_cast<std::size_t>(k.action + 1);
            h = h * 0x100000001b3ull ^ k.guard_hash;
            h = h * 0x100000001b3ull ^ k.lhs_id;
            h = h * 0x100000001b3ull ^ k.rhs_id;
            return h;
        }
    };

    ExpPtr intern(Exp&& proto, Key&& key);

    TestDecl decl_;
    mutable std::shared_mutex mutex_;
    std::deque<Exp> arena_;
    std::unordered_map<Key, ExpPtr, KeyHash> table_;
};

/// E(e): the set of atoms the expression accepts immediately.
const AtomSet& termination_set(ExpPtr e);

/// True iff E(e) is empty.
bool is_productive(ExpPtr e);

/// #(e): an upper bound on the number of reachable syntactic derivatives.
uint64_t size_bound(ExpPtr e);

/// Renders in the while-language surface syntax accepted by the parser.
std::string to_string(ExpPtr e, const TestDecl& decl);

}  // namespace gkat

#endif  // GKAT_SYNTAX_HPP
