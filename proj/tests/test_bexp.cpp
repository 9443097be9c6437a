#include "doctest.h"

#include "gkat/bexp.hpp"
#include "gkat/generate.hpp"

using namespace gkat;

namespace {

TestDecl decl2() { return TestDecl({"t1", "t2"}, {"p"}); }

// independent oracle: evaluate b under every assignment
AtomSet denote_by_enumeration(const BExp& b, const TestDecl& decl) {
    AtomSet s = AtomSet::none(decl.atom_count());
    for (Atom a = 0; a < decl.atom_count(); ++a)
        if (eval(b, a)) s.insert(a);
    return s;
}

}  // namespace

TEST_CASE("declaration rejects overlapping and oversized alphabets") {
    CHECK_THROWS_AS(TestDecl({"t", "t"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(TestDecl({"t"}, {"t"}), std::invalid_argument);
    CHECK_THROWS_AS(TestDecl({"a", "b", "c"}, {}, 2), std::invalid_argument);
    TestDecl big({"a", "b", "c"}, {}, 3);
    CHECK(big.atom_count() == 8);
}

TEST_CASE("atom labels round-trip") {
    TestDecl decl = decl2();
    CHECK(decl.atom_label(0) == "!t1!t2");
    CHECK(decl.atom_label(1) == "t1!t2");
    CHECK(decl.atom_label(3) == "t1t2");
    for (Atom a = 0; a < decl.atom_count(); ++a)
        CHECK(decl.parse_atom_label(decl.atom_label(a)) == a);
    CHECK_THROWS_AS(decl.parse_atom_label("t1"), std::invalid_argument);
    CHECK_THROWS_AS(decl.parse_atom_label("t1!t2x"), std::invalid_argument);

    TestDecl no_tests({}, {"p"});
    CHECK(no_tests.atom_count() == 1);
    CHECK(no_tests.atom_label(0) == "1");
    CHECK(no_tests.parse_atom_label("1") == 0);
}

TEST_CASE("denote of constants and literals") {
    TestDecl decl = decl2();
    CHECK(denote(*BExp::one(), decl).is_all());
    CHECK(denote(*BExp::conj(BExp::prim(0), BExp::negate(BExp::prim(0))), decl).is_empty());

    // t1 holds exactly on the atoms with the t1 bit set
    AtomSet t1 = denote(*BExp::prim(0), decl);
    CHECK(t1 == denote_by_enumeration(*BExp::prim(0), decl));
    CHECK(t1.count() == 2);
    CHECK(t1.contains(decl.parse_atom_label("t1!t2")));
    CHECK(t1.contains(decl.parse_atom_label("t1t2")));
}

TEST_CASE("set algebra on atom sets") {
    TestDecl decl = decl2();
    AtomSet all = AtomSet::all(decl.atom_count());
    CHECK(all.complement().is_empty());
    CHECK(all.complement().complement() == all);

    BExpPtr b = BExp::disj(BExp::prim(0), BExp::negate(BExp::prim(1)));
    CHECK(intersect(denote(*b, decl), denote(*BExp::negate(b), decl)).is_empty());
    CHECK(unite(denote(*BExp::prim(0), decl), denote(*BExp::negate(BExp::prim(0)), decl))
              .is_all());

    AtomSet other = AtomSet::none(2);
    CHECK_THROWS_AS(intersect(all, other), std::invalid_argument);
}

TEST_CASE("denotation agrees with per-atom evaluation on random expressions") {
    TestDecl decl({"t1", "t2", "t3"}, {});
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        BExpPtr b = random_bexp(rng, decl, 4);
        AtomSet d = denote(*b, decl);
        for (Atom a = 0; a < decl.atom_count(); ++a) CHECK(d.contains(a) == eval(*b, a));
    }
}

TEST_CASE("boolean algebra laws hold on denotations") {
    TestDecl decl({"t1", "t2", "t3"}, {});
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        BExpPtr a = random_bexp(rng, decl, 3);
        BExpPtr b = random_bexp(rng, decl, 3);
        BExpPtr c = random_bexp(rng, decl, 3);
        auto D = [&](const BExpPtr& x) { return denote(*x, decl); };
        CHECK(D(BExp::conj(a, BExp::conj(b, c))) == D(BExp::conj(BExp::conj(a, b), c)));
        CHECK(D(BExp::conj(a, BExp::disj(b, c))) ==
              D(BExp::disj(BExp::conj(a, b), BExp::conj(a, c))));
        CHECK(D(BExp::negate(BExp::conj(a, b))) ==
              D(BExp::disj(BExp::negate(a), BExp::negate(b))));
    }
}

TEST_CASE("wide alphabets span several bit-set blocks") {
    TestDecl decl({"a", "b", "c", "d", "e", "f", "g"}, {});  // 128 atoms
    CHECK(decl.atom_count() == 128);
    CHECK(AtomSet::all(128).count() == 128);
    CHECK(AtomSet::all(128).complement().is_empty());

    Rng rng(271);
    for (int i = 0; i < 50; ++i) {
        BExpPtr x = random_bexp(rng, decl, 4);
        AtomSet d = denote(*x, decl);
        CHECK(unite(d, d.complement()).is_all());
        CHECK(intersect(d, d.complement()).is_empty());
        for (int probe = 0; probe < 32; ++probe) {
            Atom a = static_cast<Atom>(rng.below(128));
            CHECK(d.contains(a) == eval(*x, a));
        }
    }
}

TEST_CASE("atom sets convert to canonical boolean expressions") {
    TestDecl decl = decl2();
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        AtomSet s = AtomSet::none(decl.atom_count());
        for (Atom a = 0; a < decl.atom_count(); ++a)
            if (rng.chance(0.5)) s.insert(a);
        CHECK(denote(*atom_set_to_bexp(s, decl), decl) == s);
    }
    CHECK(atom_set_to_bexp(AtomSet::none(4), decl)->kind == BExp::Kind::Zero);
    CHECK(atom_set_to_bexp(AtomSet::all(4), decl)->kind == BExp::Kind::One);
}
