#include "gkat/bexp.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace gkat {

namespace {

constexpr std::size_t kBlockBits = 64;

std::size_t block_count(std::size_t n) { return (n + kBlockBits - 1) / kBlockBits; }

}  // namespace

TestDecl::TestDecl(std::vector<std::string> tests, std::vector<std::string> actions,
                   int max_tests)
    : tests_(std::move(tests)), actions_(std::move(actions)) {
    if (static_cast<int>(tests_.size()) > max_tests) {
        throw std::invalid_argument("too many primitive tests: " +
                                    std::to_string(tests_.size()) + " declared, cap is " +
                                    std::to_string(max_tests) +
                                    " (the atom set must stay enumerable)");
    }
    std::unordered_set<std::string> seen;
    for (const auto& t : tests_) {
        if (t.empty()) throw std::invalid_argument("empty test name");
        if (!seen.insert(t).second)
            throw std::invalid_argument("duplicate name in declaration: " + t);
    }
    for (const auto& p : actions_) {
        if (p.empty()) throw std::invalid_argument("empty action name");
        if (!seen.insert(p).second)
            throw std::invalid_argument("name declared as both test and action, or twice: " + p);
    }
}

int TestDecl::test_index(const std::string& name) const {
    auto it = std::find(tests_.begin(), tests_.end(), name);
    return it == tests_.end() ? -1 : static_cast<int>(it - tests_.begin());
}

int TestDecl::action_index(const std::string& name) const {
    auto it = std::find(actions_.begin(), actions_.end(), name);
    return it == actions_.end() ? -1 : static_cast<int>(it - actions_.begin());
}

std::string TestDecl::atom_label(Atom a) const {
    if (tests_.empty()) return "1";
    std::string out;
    for (int i = 0; i < test_count(); ++i) {
        if (!((a >> i) & 1u)) out += '!';
        out += tests_[i];
    }
    return out;
}

Atom TestDecl::parse_atom_label(const std::string& label) const {
    if (tests_.empty()) {
        if (label == "1") return 0;
        throw std::invalid_argument("bad atom label '" + label + "' (no tests declared)");
    }
    Atom a = 0;
    std::size_t pos = 0;
    for (int i = 0; i < test_count(); ++i) {
        bool value = true;
        if (pos < label.size() && label[pos] == '!') {
            value = false;
            ++pos;
        }
        const std::string& name = tests_[i];
        if (label.compare(pos, name.size(), name) != 0) {
            throw std::invalid_argument("bad atom label '" + label + "': expected test '" +
                                        name + "' at position " + std::to_string(pos));
        }
        pos += name.size();
        if (value) a |= (Atom{1} << i);
    }
    if (pos != label.size())
        throw std::invalid_argument("bad atom label '" + label + "': trailing characters");
    return a;
}

bool TestDecl::operator==(const TestDecl& other) const {
    return tests_ == other.tests_ && actions_ == other.actions_;
}

AtomSet AtomSet::none(std::size_t n_atoms) {
    AtomSet s;
    s.n_ = n_atoms;
    s.bits_.assign(block_count(n_atoms), 0);
    return s;
}

AtomSet AtomSet::all(std::size_t n_atoms) {
    AtomSet s = none(n_atoms);
    for (auto& b : s.bits_) b = ~uint64_t{0};
    if (n_atoms % kBlockBits != 0 && !s.bits_.empty())
        s.bits_.back() &= (uint64_t{1} << (n_atoms % kBlockBits)) - 1;
    return s;
}

AtomSet AtomSet::single(std::size_t n_atoms, Atom a) {
    AtomSet s = none(n_atoms);
    s.insert(a);
    return s;
}

bool AtomSet::contains(Atom a) const {
    if (a >= n_) return false;
    return (bits_[a / kBlockBits] >> (a % kBlockBits)) & 1u;
}

void AtomSet::insert(Atom a) {
    if (a >= n_) throw std::out_of_range("atom out of range");
    bits_[a / kBlockBits] |= uint64_t{1} << (a % kBlockBits);
}

void AtomSet::erase(Atom a) {
    if (a >= n_) throw std::out_of_range("atom out of range");
    bits_[a / kBlockBits] &= ~(uint64_t{1} << (a % kBlockBits));
}

AtomSet AtomSet::complement() const {
    AtomSet s = all(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) s.bits_[i] &= ~bits_[i];
    return s;
}

bool AtomSet::is_empty() const {
    for (auto b : bits_)
        if (b) return false;
    return true;
}

bool AtomSet::is_all() const { return *this == all(n_); }

std::size_t AtomSet::count() const {
    std::size_t c = 0;
    for (auto b : bits_) c += static_cast<std::size_t>(__builtin_popcountll(b));
    return c;
}

std::vector<Atom> AtomSet::to_vector() const {
    std::vector<Atom> out;
    for (Atom a = 0; a < n_; ++a)
        if (contains(a)) out.push_back(a);
    return out;
}

bool AtomSet::disjoint_with(const AtomSet& other) const {
    check_same_universe(other);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & other.bits_[i]) return false;
    return true;
}

bool AtomSet::operator==(const AtomSet& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
}

std::size_t AtomSet::hash() const {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
    for (auto b : bits_) h = h * 0x100000001b3ull ^ b;
    return h;
}

void AtomSet::check_same_universe(const AtomSet& other) const {
    if (n_ != other.n_)
        throw std::invalid_argument("atom sets over different test declarations");
}

AtomSet intersect(const AtomSet& a, const AtomSet& b) {
    a.check_same_universe(b);
    AtomSet out = a;
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] &= b.bits_[i];
    return out;
}

AtomSet unite(const AtomSet& a, const AtomSet& b) {
    a.check_same_universe(b);
    AtomSet out = a;
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] |= b.bits_[i];
    return out;
}

BExpPtr BExp::zero() { return std::make_shared<BExp>(BExp{Kind::Zero, -1, nullptr, nullptr}); }
BExpPtr BExp::one() { return std::make_shared<BExp>(BExp{Kind::One, -1, nullptr, nullptr}); }

BExpPtr BExp::prim(int test_index) {
    return std::make_shared<BExp>(BExp{Kind::Test, test_index, nullptr, nullptr});
}

BExpPtr BExp::negate(BExpPtr b) {
    return std::make_shared<BExp>(BExp{Kind::Not, -1, std::move(b), nullptr});
}

BExpPtr BExp::conj(BExpPtr a, BExpPtr b) {
    return std::make_shared<BExp>(BExp{Kind::And, -1, std::move(a), std::move(b)});
}

BExpPtr BExp::disj(BExpPtr a, BExpPtr b) {
    return std::make_shared<BExp>(BExp{Kind::Or, -1, std::move(a), std::move(b)});
}

bool eval(const BExp& b, Atom a) {
    switch (b.kind) {
        case BExp::Kind::Zero: return false;
        case BExp::Kind::One: return true;
        case BExp::Kind::Test: return (a >> b.test) & 1u;
        case BExp::Kind::Not: return !eval(*b.lhs, a);
        case BExp::Kind::And: return eval(*b.lhs, a) && eval(*b.rhs, a);
        case BExp::Kind::Or: return eval(*b.lhs, a) || eval(*b.rhs, a);
    }
    throw std::logic_error("unreachable");
}

AtomSet denote(const BExp& b, const TestDecl& decl) {
    const std::size_t n = decl.atom_count();
    switch (b.kind) {
        case BExp::Kind::Zero: return AtomSet::none(n);
        case BExp::Kind::One: return AtomSet::all(n);
        case BExp::Kind::Test: {
            if (b.test < 0 || b.test >= decl.test_count())
                throw std::invalid_argument("test index out of range of declaration");
            AtomSet s = AtomSet::none(n);
            for (Atom a = 0; a < n; ++a)
                if ((a >> b.test) & 1u) s.insert(a);
            return s;
        }
        case BExp::Kind::Not: return denote(*b.lhs, decl).complement();
        case BExp::Kind::And: return intersect(denote(*b.lhs, decl), denote(*b.rhs, decl));
        case BExp::Kind::Or: return unite(denote(*b.lhs, decl), denote(*b.rhs, decl));
    }
    throw std::logic_error("unreachable");
}

BExpPtr atom_to_bexp(Atom a, const TestDecl& decl) {
    if (decl.test_count() == 0) return BExp::one();
    BExpPtr out;
    for (int i = 0; i < decl.test_count(); ++i) {
        BExpPtr lit = BExp::prim(i);
        if (!((a >> i) & 1u)) lit = BExp::negate(std::move(lit));
        out = out ? BExp::conj(std::move(out), std::move(lit)) : std::move(lit);
    }
    return out;
}

BExpPtr atom_set_to_bexp(const AtomSet& s, const TestDecl& decl) {
    if (s.is_empty()) return BExp::zero();
    if (s.is_all()) return BExp::one();
    BExpPtr out;
    for (Atom a : s.to_vector()) {
        BExpPtr term = atom_to_bexp(a, decl);
        out = out ? BExp::disj(std::move(out), std::move(term)) : std::move(term);
    }
    return out;
}

namespace {

// precedence: ! > & > |
int bexp_prec(BExp::Kind k) {
    switch (k) {
        case BExp::Kind::Or: return 1;
        case BExp::Kind::And: return 2;
        default: return 3;
    }
}

void print_bexp(const BExp& b, const TestDecl& decl, int parent_prec, std::string& out) {
    const int prec = bexp_prec(b.kind);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (b.kind) {
        case BExp::Kind::Zero: out += '0'; break;
        case BExp::Kind::One: out += '1'; break;
        case BExp::Kind::Test: out += decl.test_name(b.test); break;
        case BExp::Kind::Not:
            out += '!';
            print_bexp(*b.lhs, decl, 4, out);
            break;
        case BExp::Kind::And:
            print_bexp(*b.lhs, decl, 2, out);
            out += " & ";
            print_bexp(*b.rhs, decl, 3, out);
            break;
        case BExp::Kind::Or:
            print_bexp(*b.lhs, decl, 1, out);
            out += " | ";
            print_bexp(*b.rhs, decl, 2, out);
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const BExp& b, const TestDecl& decl) {
    std::string out;
    print_bexp(b, decl, 0, out);
    return out;
}

std::string atom_set_to_string(const AtomSet& s, const TestDecl& decl) {
    if (s.is_all()) return "A";
    std::string out = "{";
    bool first = true;
    for (Atom a : s.to_vector()) {
        if (!first) out += ',';
        first = false;
        out += decl.atom_label(a);
    }
    out += '}';
    return out;
}

}  // namespace gkat
