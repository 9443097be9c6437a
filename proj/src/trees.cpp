#include "gkat/trees.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace gkat {

TreeK::TreeK(int depth, std::size_t n_atoms) : depth_(depth), n_atoms_(n_atoms) {
    if (depth < 1) throw std::invalid_argument("tree depth must be at least 1");
}

std::optional<TreeVal> TreeK::at(const Word& w) const {
    auto it = table_.find(w);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

void TreeK::set(const Word& w, TreeVal v) {
    if (w.empty() || static_cast<int>(w.size()) > depth_)
        throw std::out_of_range("word length outside 1..depth");
    for (char16_t a : w)
        if (static_cast<std::size_t>(a) >= n_atoms_)
            throw std::out_of_range("atom outside the universe");
    table_[w] = v;
}

void TreeK::validate() const {
    for (std::size_t a = 0; a < n_atoms_; ++a) {
        Word w(1, static_cast<char16_t>(a));
        if (!table_.count(w)) throw std::logic_error("missing length-1 entry");
    }
    for (const auto& [w, v] : table_) {
        if (static_cast<int>(w.size()) >= depth_) continue;
        for (std::size_t a = 0; a < n_atoms_; ++a) {
            Word wa = w + static_cast<char16_t>(a);
            bool present = table_.count(wa) > 0;
            if (v.is_act() && !present)
                throw std::logic_error("action entry without successor inside the horizon");
            if (!v.is_act() && present)
                throw std::logic_error("termination entry with a successor");
        }
    }
}

TreeK truncate(const TreeK& t, int j) {
    if (j > t.depth()) throw std::invalid_argument("cannot deepen a truncation");
    TreeK out(j, t.atom_universe());
    for (const auto& [w, v] : t.table()) {
        if (static_cast<int>(w.size()) > j) break;  // shortlex: longer words follow
        out.set(w, v);
    }
    return out;
}

TreeK subtree(const TreeK& t, const Word& w) {
    auto v = t.at(w);
    if (!v || !v->is_act()) throw std::invalid_argument("subtrees hang off action entries");
    TreeK out(t.depth() - static_cast<int>(w.size()), t.atom_universe());
    for (const auto& [key, val] : t.table())
        if (key.size() > w.size() && key.compare(0, w.size(), w) == 0)
            out.set(key.substr(w.size()), val);
    return out;
}

TreeK unfold(const Automaton& x, int state, int k) {
    if (state < 0 || state >= x.state_count()) throw std::out_of_range("state out of range");
    TreeK out(k, x.decl().atom_count());
    const std::size_t n_atoms = x.decl().atom_count();
    Word w;
    auto rec = [&](auto&& self, int s) -> void {
        for (Atom a = 0; a < n_atoms; ++a) {
            w.push_back(static_cast<char16_t>(a));
            Outcome o = x.outcome(s, a);
            switch (o.kind) {
                case Outcome::Kind::Reject: out.set(w, TreeVal::zero()); break;
                case Outcome::Kind::Accept: out.set(w, TreeVal::one()); break;
                case Outcome::Kind::Step:
                    out.set(w, TreeVal::act(o.action));
                    if (static_cast<int>(w.size()) < k) self(self, o.target);
                    break;
            }
            w.pop_back();
        }
    };
    rec(rec, state);
    return out;
}

TreeK normalize_unfolding(const Automaton& x, int state, int k) {
    if (state < 0 || state >= x.state_count()) throw std::out_of_range("state out of range");
    std::vector<bool> dead = dead_states(x);
    TreeK out(k, x.decl().atom_count());
    const std::size_t n_atoms = x.decl().atom_count();
    Word w;
    auto rec = [&](auto&& self, int s) -> void {
        for (Atom a = 0; a < n_atoms; ++a) {
            w.push_back(static_cast<char16_t>(a));
            Outcome o = x.outcome(s, a);
            if (o.is_step() && !dead[o.target]) {
                out.set(w, TreeVal::act(o.action));
                if (static_cast<int>(w.size()) < k) self(self, o.target);
            } else if (o.kind == Outcome::Kind::Accept) {
                out.set(w, TreeVal::one());
            } else {
                out.set(w, TreeVal::zero());
            }
            w.pop_back();
        }
    };
    rec(rec, state);
    return out;
}

// ---- lazy evaluation of the behavioral differential equations ----

namespace {

constexpr int kInfDepth = 1 << 28;

struct Node;
using NodeP = std::shared_ptr<const Node>;

struct Node {
    enum class K : uint8_t { Table, TestLeaf, ActLeaf, Seq, Union, Loop, Cont };

    K k;
    std::shared_ptr<const TreeK> tree;  // Table
    Word prefix;                        // Table
    AtomSet set;                        // TestLeaf / Union guard / Loop guard / ActLeaf: A
    int action = -1;                    // ActLeaf
    NodeP a, b;
    int min_depth = kInfDepth;  // all words up to this length are determined
};

NodeP make_table(std::shared_ptr<const TreeK> t, Word prefix) {
    auto n = std::make_shared<Node>();
    n->k = Node::K::Table;
    n->min_depth = t->depth() - static_cast<int>(prefix.size());
    n->tree = std::move(t);
    n->prefix = std::move(prefix);
    return n;
}

NodeP wrap(const TreeK& t) { return make_table(std::make_shared<TreeK>(t), Word{}); }

NodeP make_test(AtomSet set) {
    auto n = std::make_shared<Node>();
    n->k = Node::K::TestLeaf;
    n->set = std::move(set);
    return n;
}

NodeP make_act(int action, std::size_t n_atoms) {
    auto n = std::make_shared<Node>();
    n->k = Node::K::ActLeaf;
    n->action = action;
    n->set = AtomSet::all(n_atoms);
    return n;
}

NodeP make_binary(Node::K k, NodeP a, NodeP b) {
    auto n = std::make_shared<Node>();
    n->k = k;
    n->min_depth = std::min(a->min_depth, b->min_depth);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodeP make_union(NodeP a, NodeP b, AtomSet guard) {
    auto n = std::make_shared<Node>();
    n->k = Node::K::Union;
    n->min_depth = std::min(a->min_depth, b->min_depth);
    n->a = std::move(a);
    n->b = std::move(b);
    n->set = std::move(guard);
    return n;
}

NodeP make_loop(NodeP body, AtomSet guard) {
    auto n = std::make_shared<Node>();
    n->k = Node::K::Loop;
    n->min_depth = body->min_depth;
    n->a = std::move(body);
    n->set = std::move(guard);
    return n;
}

std::optional<TreeVal> node_value(const NodeP& n, Atom at) {
    switch (n->k) {
        case Node::K::Table: {
            Word w = n->prefix;
            w.push_back(static_cast<char16_t>(at));
            return n->tree->at(w);
        }
        case Node::K::TestLeaf:
            return n->set.contains(at) ? TreeVal::one() : TreeVal::zero();
        case Node::K::ActLeaf: return TreeVal::act(n->action);
        case Node::K::Seq: {
            auto sv = node_value(n->a, at);
            if (!sv) return std::nullopt;
            if (sv->kind == TreeVal::Kind::One) return node_value(n->b, at);
            return sv;
        }
        case Node::K::Union: return node_value(n->set.contains(at) ? n->a : n->b, at);
        case Node::K::Loop: {
            if (!n->set.contains(at)) return TreeVal::one();
            auto tv = node_value(n->a, at);
            if (!tv) return std::nullopt;
            return tv->is_act() ? *tv : TreeVal::zero();
        }
        case Node::K::Cont: {
            auto sv = node_value(n->a, at);
            if (!sv) return std::nullopt;
            if (sv->kind == TreeVal::Kind::One) return node_value(n->b, at);
            return sv;
        }
    }
    throw std::logic_error("unreachable");
}

// pre: node_value(n, at) is an action
NodeP node_deriv(const NodeP& n, Atom at) {
    switch (n->k) {
        case Node::K::Table: {
            Word w = n->prefix;
            w.push_back(static_cast<char16_t>(at));
            return make_table(n->tree, std::move(w));
        }
        case Node::K::TestLeaf: throw std::logic_error("tests have no derivatives");
        case Node::K::ActLeaf: return make_test(n->set);
        case Node::K::Seq: {
            auto sv = node_value(n->a, at);
            if (sv->kind == TreeVal::Kind::One) return node_deriv(n->b, at);
            return make_binary(Node::K::Seq, node_deriv(n->a, at), n->b);
        }
        case Node::K::Union: return node_deriv(n->set.contains(at) ? n->a : n->b, at);
        case Node::K::Loop:
            return make_binary(Node::K::Seq, node_deriv(n->a, at), n);
        case Node::K::Cont: {
            auto sv = node_value(n->a, at);
            if (sv->kind == TreeVal::Kind::One)
                return make_binary(Node::K::Cont, node_deriv(n->b, at), n->b);
            return make_binary(Node::K::Cont, node_deriv(n->a, at), n->b);
        }
    }
    throw std::logic_error("unreachable");
}

TreeK materialize(const NodeP& root, int k, std::size_t n_atoms) {
    TreeK out(k, n_atoms);
    Word w;
    auto rec = [&](auto&& self, const NodeP& n) -> void {
        for (Atom at = 0; at < n_atoms; ++at) {
            auto v = node_value(n, at);
            if (!v) continue;  // horizon
            w.push_back(static_cast<char16_t>(at));
            out.set(w, *v);
            if (v->is_act() && static_cast<int>(w.size()) < k) self(self, node_deriv(n, at));
            w.pop_back();
        }
    };
    rec(rec, root);
    return out;
}

void check_universe(const TreeK& s, const TreeK& t) {
    if (s.atom_universe() != t.atom_universe())
        throw std::invalid_argument("trees over different test declarations");
}

NodeP build_exp_node(ExpPtr e, std::size_t n_atoms) {
    switch (e->kind) {
        case Exp::Kind::Test: return make_test(e->guard);
        case Exp::Kind::Act: return make_act(e->action, n_atoms);
        case Exp::Kind::Seq:
            return make_binary(Node::K::Seq, build_exp_node(e->lhs, n_atoms),
                               build_exp_node(e->rhs, n_atoms));
        case Exp::Kind::IfThenElse:
            return make_union(build_exp_node(e->lhs, n_atoms),
                              build_exp_node(e->rhs, n_atoms), e->guard);
        case Exp::Kind::While: return make_loop(build_exp_node(e->lhs, n_atoms), e->guard);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

TreeK eval_tree(Context& ctx, ExpPtr e, int k) {
    const std::size_t n_atoms = ctx.decl().atom_count();
    return materialize(build_exp_node(e, n_atoms), k, n_atoms);
}

TreeK tree_of_test(const AtomSet& b, int k) {
    TreeK out(k, b.universe());
    for (std::size_t a = 0; a < b.universe(); ++a)
        out.set(Word(1, static_cast<char16_t>(a)),
                b.contains(static_cast<Atom>(a)) ? TreeVal::one() : TreeVal::zero());
    return out;
}

TreeK tree_seq(const TreeK& s, const TreeK& t) {
    check_universe(s, t);
    return materialize(make_binary(Node::K::Seq, wrap(s), wrap(t)),
                       std::min(s.depth(), t.depth()), s.atom_universe());
}

TreeK tree_union(const TreeK& s, const TreeK& t, const AtomSet& b) {
    check_universe(s, t);
    if (b.universe() != s.atom_universe())
        throw std::invalid_argument("guard over a different test declaration");
    return materialize(make_union(wrap(s), wrap(t), b), std::min(s.depth(), t.depth()),
                       s.atom_universe());
}

TreeK tree_loop(const TreeK& t, const AtomSet& b) {
    if (b.universe() != t.atom_universe())
        throw std::invalid_argument("guard over a different test declaration");
    return materialize(make_loop(wrap(t), b), t.depth(), t.atom_universe());
}

TreeK tree_cont(const TreeK& s, const TreeK& t) {
    check_universe(s, t);
    return materialize(make_binary(Node::K::Cont, wrap(s), wrap(t)),
                       std::min(s.depth(), t.depth()), s.atom_universe());
}

TreeK tree_step_part(const TreeK& t) {
    TreeK out(t.depth(), t.atom_universe());
    for (const auto& [w, v] : t.table()) {
        if (w.size() == 1 && !v.is_act())
            out.set(w, TreeVal::zero());
        else
            out.set(w, v);
    }
    return out;
}

AtomSet accept_set(const TreeK& t) {
    AtomSet s = AtomSet::none(t.atom_universe());
    for (std::size_t a = 0; a < t.atom_universe(); ++a) {
        auto v = t.at(Word(1, static_cast<char16_t>(a)));
        if (v && v->kind == TreeVal::Kind::One) s.insert(static_cast<Atom>(a));
    }
    return s;
}

TreeK prune(const TreeK& t, const std::function<bool(const TreeK&)>& pred) {
    TreeK out(t.depth(), t.atom_universe());
    const std::size_t n_atoms = t.atom_universe();
    Word w;
    auto rec = [&](auto&& self) -> void {
        for (Atom a = 0; a < n_atoms; ++a) {
            w.push_back(static_cast<char16_t>(a));
            auto v = t.at(w);
            if (v) {
                // action entries at the horizon have no truncation to judge;
                // they are preserved
                bool inside = static_cast<int>(w.size()) < t.depth();
                if (v->is_act() && inside && pred(subtree(t, w))) {
                    out.set(w, TreeVal::zero());
                } else {
                    out.set(w, *v);
                    if (v->is_act() && inside) self(self);
                }
            }
            w.pop_back();
        }
    };
    rec(rec);
    return out;
}

NormalizedTree normalize_tree(const TreeK& t) {
    auto horizon_dead = [](const TreeK& sub) {
        for (const auto& [w, v] : sub.table())
            if (v.kind == TreeVal::Kind::One) return false;
        return true;
    };
    return {prune(t, horizon_dead), false};
}

double TreeDistance::value() const { return is_zero ? 0.0 : std::ldexp(1.0, -exponent); }

bool TreeDistance::at_most_half_of(const TreeDistance& other) const {
    if (is_zero) return true;
    if (other.is_zero) return false;
    return exponent >= other.exponent + 1;
}

TreeDistance tree_distance(const TreeK& s, const TreeK& t) {
    check_universe(s, t);
    if (s.depth() != t.depth())
        throw std::invalid_argument("tree distance requires equal depths");

    int best = kInfDepth;
    auto longest_common_prefix = [&](const Word& w) {
        for (int len = static_cast<int>(w.size()) - 1; len >= 1; --len) {
            Word p = w.substr(0, len);
            if (s.at(p) && t.at(p)) return len;
        }
        return 0;  // unreachable for well-formed trees: length-1 words are shared
    };
    for (const auto& [w, v] : s.table()) {
        auto tv = t.at(w);
        if (tv) {
            if (!(*tv == v)) best = std::min(best, static_cast<int>(w.size()));
        } else {
            best = std::min(best, longest_common_prefix(w));
        }
    }
    for (const auto& [w, v] : t.table())
        if (!s.at(w)) best = std::min(best, longest_common_prefix(w));

    TreeDistance d;
    if (best != kInfDepth && best > 0) {
        d.is_zero = false;
        d.exponent = best;
    }
    return d;
}

std::string dump(const TreeK& t, const TestDecl& decl) {
    std::string out;
    for (const auto& [w, v] : t.table()) {
        std::string line;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) line += '.';
            line += decl.atom_label(static_cast<Atom>(w[i]));
        }
        line += " -> ";
        switch (v.kind) {
            case TreeVal::Kind::Zero: line += '0'; break;
            case TreeVal::Kind::One: line += '1'; break;
            case TreeVal::Kind::Act: line += decl.action_name(v.action); break;
        }
        out += line;
        out += '\n';
    }
    return out;
}

void validate_salomaa(const SalomaaSystem& sys, const TestDecl& decl) {
    const std::size_t n_atoms = decl.atom_count();
    for (int i = 0; i < sys.size(); ++i) {
        const SalomaaRow& row = sys.rows[i];
        if (row.constant.universe() != n_atoms)
            throw std::invalid_argument("constant over a different test declaration");
        AtomSet used = row.constant;
        for (const SalomaaTerm& term : row.terms) {
            if (term.var < 0 || term.var >= sys.size())
                throw std::invalid_argument("variable index out of range");
            if (term.guard.universe() != n_atoms)
                throw std::invalid_argument("guard over a different test declaration");
            if (!term.guard.disjoint_with(used))
                throw std::invalid_argument("row " + std::to_string(i) +
                                            " has overlapping guards");
            used = unite(used, term.guard);
            if (!is_productive(term.coeff))
                throw std::invalid_argument(
                    "coefficient is not productive (accepts some atom immediately): " +
                    to_string(term.coeff, decl));
        }
    }
}

SalomaaSystem extract_salomaa(Context& ctx, const Automaton& x) {
    const std::size_t n_atoms = x.decl().atom_count();
    SalomaaSystem sys;
    for (int i = 0; i < x.state_count(); ++i) {
        SalomaaRow row;
        row.constant = x.accept_set(i);
        for (int j = 0; j < x.state_count(); ++j) {
            std::vector<std::pair<Atom, int>> steps;  // atom, action
            for (Atom a = 0; a < n_atoms; ++a) {
                Outcome o = x.outcome(i, a);
                if (o.is_step() && o.target == j) steps.emplace_back(a, o.action);
            }
            if (steps.empty()) continue;
            SalomaaTerm term;
            term.var = j;
            term.guard = AtomSet::none(n_atoms);
            ExpPtr coeff = ctx.zero();
            for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
                term.guard.insert(it->first);
                coeff = ctx.ifte(atom_to_bexp(it->first, ctx.decl()), ctx.act(it->second),
                                 coeff);
            }
            term.coeff = coeff;
            row.terms.push_back(std::move(term));
        }
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

SalomaaSolveResult solve_salomaa(Context& ctx, const SalomaaSystem& sys, int k) {
    validate_salomaa(sys, ctx.decl());
    const std::size_t n_atoms = ctx.decl().atom_count();
    const int n = sys.size();
    SalomaaSolveResult res;
    if (n == 0) return res;

    std::vector<std::vector<TreeK>> coeff_trees(n);
    for (int i = 0; i < n; ++i)
        for (const SalomaaTerm& term : sys.rows[i].terms)
            coeff_trees[i].push_back(eval_tree(ctx, term.coeff, k));

    std::vector<TreeK> u(n, tree_of_test(AtomSet::none(n_atoms), k));
    // k+1 contraction steps pin everything inside depth k; the cap is slack
    const int max_iter = k + 4;
    for (int m = 0; m < max_iter; ++m) {
        std::vector<TreeK> next;
        next.reserve(n);
        TreeDistance dist;  // zero
        for (int i = 0; i < n; ++i) {
            TreeK acc = tree_of_test(sys.rows[i].constant, k);
            const auto& terms = sys.rows[i].terms;
            for (int tj = static_cast<int>(terms.size()) - 1; tj >= 0; --tj)
                acc = tree_union(tree_seq(coeff_trees[i][tj], u[terms[tj].var]), acc,
                                 terms[tj].guard);
            TreeDistance d = tree_distance(acc, u[i]);
            if (!d.is_zero && (dist.is_zero || d.exponent < dist.exponent)) dist = d;
            next.push_back(std::move(acc));
        }
        u = std::move(next);
        res.step_distances.push_back(dist);
        ++res.iterations;
        if (dist.is_zero) break;
    }
    if (!res.step_distances.back().is_zero)
        throw std::logic_error("fixed-point iteration failed to settle within the bound");
    res.solution = std::move(u);
    return res;
}

}  // namespace gkat
