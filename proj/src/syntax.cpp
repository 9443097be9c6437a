#include "gkat/syntax.hpp"

#include <mutex>
#include <stdexcept>

namespace gkat {

Context::Context(TestDecl decl) : decl_(std::move(decl)) {}

ExpPtr Context::intern(Exp&& proto, Key&& key) {
    {
        std::shared_lock lock(mutex_);
        auto it = table_.find(key);
        if (it != table_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    proto.id = arena_.size() + 1;
    arena_.push_back(std::move(proto));
    ExpPtr p = &arena_.back();
    table_.emplace(std::move(key), p);
    return p;
}

ExpPtr Context::test(BExpPtr b) {
    AtomSet set = denote(*b, decl_);
    Exp proto;
    proto.kind = Exp::Kind::Test;
    proto.guard_syntax = std::move(b);
    proto.guard = set;
    proto.accept_now = set;
    proto.bound = 1;
    Key key{Exp::Kind::Test, -1, set.hash(), std::move(set), 0, 0};
    return intern(std::move(proto), std::move(key));
}

ExpPtr Context::test(const AtomSet& set) { return test(atom_set_to_bexp(set, decl_)); }

ExpPtr Context::zero() { return test(BExp::zero()); }
ExpPtr Context::one() { return test(BExp::one()); }

ExpPtr Context::act(int action) {
    if (action < 0 || action >= decl_.action_count())
        throw std::invalid_argument("action index out of range of declaration");
    Exp proto;
    proto.kind = Exp::Kind::Act;
    proto.action = action;
    proto.accept_now = AtomSet::none(decl_.atom_count());
    proto.bound = 2;
    Key key{Exp::Kind::Act, action, 0, AtomSet{}, 0, 0};
    return intern(std::move(proto), std::move(key));
}

ExpPtr Context::act(const std::string& name) {
    int i = decl_.action_index(name);
    if (i < 0) throw std::invalid_argument("undeclared action: " + name);
    return act(i);
}

ExpPtr Context::seq(ExpPtr lhs, ExpPtr rhs) {
    Exp proto;
    proto.kind = Exp::Kind::Seq;
    proto.lhs = lhs;
    proto.rhs = rhs;
    proto.accept_now = intersect(lhs->accept_now, rhs->accept_now);
    proto.bound = lhs->bound + rhs->bound;
    Key key{Exp::Kind::Seq, -1, 0, AtomSet{}, lhs->id, rhs->id};
    return intern(std::move(proto), std::move(key));
}

ExpPtr Context::ifte(BExpPtr b, ExpPtr lhs, ExpPtr rhs) {
    AtomSet set = denote(*b, decl_);
    Exp proto;
    proto.kind = Exp::Kind::IfThenElse;
    proto.guard_syntax = std::move(b);
    proto.guard = set;
    proto.lhs = lhs;
    proto.rhs = rhs;
    proto.accept_now = unite(intersect(set, lhs->accept_now),
                             intersect(set.complement(), rhs->accept_now));
    proto.bound = lhs->bound + rhs->bound;
    Key key{Exp::Kind::IfThenElse, -1, set.hash(), std::move(set), lhs->id, rhs->id};
    return intern(std::move(proto), std::move(key));
}

ExpPtr Context::ifte(const AtomSet& b, ExpPtr lhs, ExpPtr rhs) {
    return ifte(atom_set_to_bexp(b, decl_), lhs, rhs);
}

ExpPtr Context::loop(BExpPtr b, ExpPtr body) {
    AtomSet set = denote(*b, decl_);
    Exp proto;
    proto.kind = Exp::Kind::While;
    proto.guard_syntax = std::move(b);
    proto.guard = set;
    proto.lhs = body;
    proto.accept_now = set.complement();
    proto.bound = body->bound;
    Key key{Exp::Kind::While, -1, set.hash(), std::move(set), body->id, 0};
    return intern(std::move(proto), std::move(key));
}

ExpPtr Context::loop(const AtomSet& b, ExpPtr body) {
    return loop(atom_set_to_bexp(b, decl_), body);
}

std::size_t Context::interned_count() const {
    std::shared_lock lock(mutex_);
    return arena_.size();
}

const AtomSet& termination_set(ExpPtr e) { return e->accept_now; }

bool is_productive(ExpPtr e) { return e->accept_now.is_empty(); }

uint64_t size_bound(ExpPtr e) { return e->bound; }

namespace {

// branch-level nodes (if/while/primary) need no parens; a seq child does
void print_branch(ExpPtr e, const TestDecl& decl, std::string& out);

void print_exp(ExpPtr e, const TestDecl& decl, std::string& out) {
    if (e->kind == Exp::Kind::Seq) {
        print_exp(e->lhs, decl, out);
        out += "; ";
        print_branch(e->rhs, decl, out);
    } else {
        print_branch(e, decl, out);
    }
}

void print_branch(ExpPtr e, const TestDecl& decl, std::string& out) {
    switch (e->kind) {
        case Exp::Kind::Test:
            if (e->guard.is_all()) {
                out += '1';
            } else if (e->guard.is_empty() && e->guard_syntax->kind == BExp::Kind::Zero) {
                out += '0';
            } else {
                out += "assert ";
                BExpPtr b = e->guard_syntax;
                if (b->kind == BExp::Kind::Or || b->kind == BExp::Kind::And) {
                    out += '(';
                    out += to_string(*b, decl);
                    out += ')';
                } else {
                    out += to_string(*b, decl);
                }
            }
            break;
        case Exp::Kind::Act: out += decl.action_name(e->action); break;
        case Exp::Kind::Seq:
            out += '(';
            print_exp(e, decl, out);
            out += ')';
            break;
        case Exp::Kind::IfThenElse:
            out += "if ";
            out += to_string(*e->guard_syntax, decl);
            out += " then ";
            print_branch(e->lhs, decl, out);
            out += " else ";
            print_branch(e->rhs, decl, out);
            break;
        case Exp::Kind::While:
            out += "while ";
            out += to_string(*e->guard_syntax, decl);
            out += " do ";
            print_branch(e->lhs, decl, out);
            break;
    }
}

}  // namespace

std::string to_string(ExpPtr e, const TestDecl& decl) {
    std::string out;
    print_exp(e, decl, out);
    return out;
}

}  // namespace gkat
