#include "gkat/wellnested.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "gkat/coequations.hpp"

namespace gkat {

Automaton build_wellnested(const WellNestedCert& cert) {
    if (cert.is_leaf) {
        if (!cert.discrete) throw std::invalid_argument("leaf without an automaton");
        if (!check_discrete(*cert.discrete))
            throw std::invalid_argument("leaf automaton is not discrete");
        return *cert.discrete;
    }
    if (!cert.x_child || !cert.y_child)
        throw std::invalid_argument("derivation node without both children");
    Automaton x1 = build_wellnested(*cert.x_child);
    Automaton y1 = build_wellnested(*cert.y_child);

    for (int i = 0; i < y1.state_count(); ++i)
        if (x1.state_index(y1.state_name(i)) >= 0)
            throw std::invalid_argument("derivation parts share state name: " +
                                        y1.state_name(i));

    auto matches = [](const Automaton& part, const std::vector<std::string>& names) {
        if (part.state_count() != static_cast<int>(names.size())) return false;
        for (const auto& n : names)
            if (part.state_index(n) < 0) return false;
        return true;
    };
    if (!matches(x1, cert.x_states) || !matches(y1, cert.y_states))
        throw std::invalid_argument("derivation parts do not match the recorded state sets");

    Automaton w = coproduct(x1, y1);
    const TestDecl& decl = w.decl();
    if (cert.h.size() != decl.atom_count())
        throw std::invalid_argument("continuation map must cover every atom");

    std::vector<int> u;
    for (const std::string& name : cert.x_states) u.push_back(w.state_index(name));

    std::vector<Outcome> h(decl.atom_count());
    for (Atom a = 0; a < decl.atom_count(); ++a) {
        const WellNestedCert::HEntry& e = cert.h[a];
        switch (e.kind) {
            case Outcome::Kind::Reject: h[a] = Outcome::reject(); break;
            case Outcome::Kind::Accept: h[a] = Outcome::accept(); break;
            case Outcome::Kind::Step: {
                int act = decl.action_index(e.action);
                int to = w.state_index(e.target);
                if (act < 0 || to < 0)
                    throw std::invalid_argument("continuation map has a dangling entry");
                h[a] = Outcome::step(act, to);
                break;
            }
        }
    }
    return uniform_continuation(w, u, h);
}

namespace {

std::string encode(const Automaton& m) {
    // start is irrelevant to nestedness, names keep subproblem reuse sound
    std::string s;
    for (int i = 0; i < m.state_count(); ++i) {
        s += m.state_name(i);
        s += '|';
        for (Atom a = 0; a < m.decl().atom_count(); ++a) {
            Outcome o = m.outcome(i, a);
            switch (o.kind) {
                case Outcome::Kind::Reject: s += 'r'; break;
                case Outcome::Kind::Accept: s += '1'; break;
                case Outcome::Kind::Step:
                    s += 's';
                    s += std::to_string(o.action);
                    s += ',';
                    s += std::to_string(o.target);
                    break;
            }
            s += ';';
        }
        s += '\n';
    }
    return s;
}

struct Searcher {
    const TestDecl& decl;
    std::size_t n_atoms;
    std::unordered_map<std::string, WellNestedResult> memo;

    explicit Searcher(const TestDecl& d) : decl(d), n_atoms(d.atom_count()) {}

    WellNestedResult solve(const Automaton& m) {
        std::string key = encode(m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        WellNestedResult res;
        if (check_discrete(m)) {
            auto leaf = std::make_shared<WellNestedCert>();
            leaf->is_leaf = true;
            leaf->discrete = m;
            res = {true, std::move(leaf)};
        } else {
            res = solve_node(m);
        }
        memo.emplace(std::move(key), res);
        return res;
    }

    bool step_closed(const Automaton& m, uint32_t ymask) const {
        for (int s = 0; s < m.state_count(); ++s) {
            if (!((ymask >> s) & 1u)) continue;
            for (Atom a = 0; a < n_atoms; ++a) {
                Outcome o = m.outcome(s, a);
                if (o.is_step() && !((ymask >> o.target) & 1u)) return false;
            }
        }
        return true;
    }

    WellNestedResult solve_node(const Automaton& m) {
        const int n = m.state_count();
        std::vector<uint32_t> masks;
        for (uint32_t mask = 0; mask < (1u << n); ++mask)
            if (mask != (1u << n) - 1) masks.push_back(mask);  // X part must be nonempty
        std::stable_sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
            return __builtin_popcount(a) < __builtin_popcount(b);
        });
        for (uint32_t ymask : masks) {
            if (!step_closed(m, ymask)) continue;
            WellNestedResult r = attempt(m, ymask);
            if (r.well_nested) return r;
        }
        return {false, nullptr};
    }

    WellNestedResult attempt(const Automaton& m, uint32_t ymask) {
        const int n = m.state_count();
        std::vector<int> xs, ys;
        for (int s = 0; s < n; ++s) ((ymask >> s) & 1u ? ys : xs).push_back(s);

        // entries forced through h: accepts of the X part and steps into Y
        std::vector<std::optional<Outcome>> h(n_atoms);
        auto pin = [&](Atom a, Outcome o) {
            if (h[a] && !(*h[a] == o)) return false;
            h[a] = o;
            return true;
        };
        for (int s : xs) {
            for (Atom a = 0; a < n_atoms; ++a) {
                Outcome o = m.outcome(s, a);
                if (o.kind == Outcome::Kind::Accept) {
                    if (!pin(a, Outcome::accept())) return {false, nullptr};
                } else if (o.is_step() && ((ymask >> o.target) & 1u)) {
                    if (!pin(a, o)) return {false, nullptr};
                }
            }
        }

        // per atom without a pinned value, the search may overwrite a group
        // of equal entries (rejects, or steps staying in X) with accepts and
        // route them through h
        struct AtomChoice {
            Atom atom;
            std::vector<std::pair<Outcome, std::vector<int>>> groups;  // value -> states
        };
        std::vector<AtomChoice> choices;
        for (Atom a = 0; a < n_atoms; ++a) {
            if (h[a]) continue;
            std::map<std::pair<int, int>, std::pair<Outcome, std::vector<int>>> by_value;
            for (int s : xs) {
                Outcome o = m.outcome(s, a);
                std::pair<int, int> key =
                    o.is_step() ? std::make_pair(o.target, o.action) : std::make_pair(-1, -1);
                auto& slot = by_value[key];
                slot.first = o;
                slot.second.push_back(s);
            }
            AtomChoice c{a, {}};
            for (auto& [key, slot] : by_value) c.groups.push_back(std::move(slot));
            choices.push_back(std::move(c));
        }

        std::vector<std::pair<int, Atom>> restored;  // optional restorations chosen
        WellNestedResult found{false, nullptr};

        auto finish = [&]() -> bool {
            if (ymask == 0 && restored.empty()) return false;  // no progress

            Automaton x1(m.decl());
            std::vector<int> xmap(n, -1);
            for (int s : xs) xmap[s] = x1.add_state(m.state_name(s));
            std::vector<std::pair<std::string, Atom>> introduced;
            for (int s : xs) {
                for (Atom a = 0; a < n_atoms; ++a) {
                    Outcome o = m.outcome(s, a);
                    bool restore = o.kind == Outcome::Kind::Accept ||
                                   (o.is_step() && ((ymask >> o.target) & 1u)) ||
                                   std::find(restored.begin(), restored.end(),
                                             std::make_pair(s, a)) != restored.end();
                    if (restore) {
                        x1.set_outcome(xmap[s], a, Outcome::accept());
                        if (o.kind != Outcome::Kind::Accept)
                            introduced.emplace_back(m.state_name(s), a);
                    } else if (o.is_step()) {
                        x1.set_outcome(xmap[s], a, Outcome::step(o.action, xmap[o.target]));
                    }
                }
            }
            Automaton y1 = restrict_to(m, ys);
            y1.clear_start();
            x1.clear_start();

            WellNestedResult rx = solve(x1);
            if (!rx.well_nested) return false;
            WellNestedResult ry = solve(y1);
            if (!ry.well_nested) return false;

            auto node = std::make_shared<WellNestedCert>();
            for (int s : xs) node->x_states.push_back(m.state_name(s));
            for (int s : ys) node->y_states.push_back(m.state_name(s));
            node->h.resize(n_atoms);
            for (Atom a = 0; a < n_atoms; ++a) {
                if (!h[a]) continue;  // unused atoms keep the reject default
                node->h[a].kind = h[a]->kind;
                if (h[a]->is_step()) {
                    node->h[a].action = m.decl().action_name(h[a]->action);
                    node->h[a].target = m.state_name(h[a]->target);
                }
            }
            node->restorations = std::move(introduced);
            node->x_child = rx.cert;
            node->y_child = ry.cert;
            found = {true, std::move(node)};
            return true;
        };

        // depth-first over the per-atom overwrite choices
        auto rec = [&](auto&& self, std::size_t ci) -> bool {
            if (ci == choices.size()) return finish();
            const AtomChoice& c = choices[ci];
            if (self(self, ci + 1)) return true;  // leave the atom unused
            for (const auto& [value, states] : c.groups) {
                const uint32_t limit = 1u << states.size();
                for (uint32_t pick = 1; pick < limit; ++pick) {
                    std::size_t mark = restored.size();
                    for (std::size_t i = 0; i < states.size(); ++i)
                        if ((pick >> i) & 1u) restored.emplace_back(states[i], c.atom);
                    h[c.atom] = value;
                    bool ok = self(self, ci + 1);
                    restored.resize(mark);
                    h[c.atom] = std::nullopt;
                    if (ok) return true;
                }
            }
            return false;
        };
        rec(rec, 0);
        return found;
    }
};

}  // namespace

WellNestedResult is_wellnested_bounded(const Automaton& x, int max_states) {
    if (x.state_count() > max_states)
        throw std::invalid_argument("automaton exceeds the search bound of " +
                                    std::to_string(max_states) + " states");
    if (x.state_count() > 31) throw std::invalid_argument("search bound too large");
    Searcher s(x.decl());
    Automaton stripped = x;
    stripped.clear_start();
    return s.solve(stripped);
}

namespace {

void render(const WellNestedCert& cert, const TestDecl& decl, int indent, std::string& out) {
    std::string pad(2 * indent, ' ');
    if (cert.is_leaf) {
        out += pad + "discrete {";
        for (int i = 0; i < cert.discrete->state_count(); ++i) {
            if (i) out += ',';
            out += cert.discrete->state_name(i);
        }
        out += "}\n";
        return;
    }
    out += pad + "continuation along X = {";
    for (std::size_t i = 0; i < cert.x_states.size(); ++i) {
        if (i) out += ',';
        out += cert.x_states[i];
    }
    out += "}, Y = {";
    for (std::size_t i = 0; i < cert.y_states.size(); ++i) {
        if (i) out += ',';
        out += cert.y_states[i];
    }
    out += "}\n";
    out += pad + "  h:";
    for (Atom a = 0; a < cert.h.size(); ++a) {
        const auto& e = cert.h[a];
        out += ' ' + decl.atom_label(a) + "->";
        switch (e.kind) {
            case Outcome::Kind::Reject: out += "reject"; break;
            case Outcome::Kind::Accept: out += "accept"; break;
            case Outcome::Kind::Step: out += e.action + "," + e.target; break;
        }
    }
    out += '\n';
    if (!cert.restorations.empty()) {
        out += pad + "  restored accepts:";
        for (const auto& [name, a] : cert.restorations)
            out += ' ' + name + '@' + decl.atom_label(a);
        out += '\n';
    }
    out += pad + "  X part:\n";
    render(*cert.x_child, decl, indent + 2, out);
    out += pad + "  Y part:\n";
    render(*cert.y_child, decl, indent + 2, out);
}

}  // namespace

std::string to_string(const WellNestedCert& cert, const TestDecl& decl) {
    std::string out;
    render(cert, decl, 0, out);
    return out;
}

// ---- fixtures ----

namespace {

TestDecl fig4_decl() { return TestDecl({"t1"}, {"p", "q"}); }
TestDecl fig5_decl() { return TestDecl({"t1", "t2"}, {"p"}); }

}  // namespace

Automaton fixture_fig4(const AtomSet& b) {
    TestDecl decl = fig4_decl();
    if (b.universe() != decl.atom_count())
        throw std::invalid_argument("guard must range over the two atoms of {t1}");
    Automaton out(decl);
    int v0 = out.add_state("v0"), v1 = out.add_state("v1");
    for (Atom a = 0; a < decl.atom_count(); ++a) {
        if (b.contains(a)) {
            out.set_outcome(v0, a, Outcome::step(0, v1));  // b | p
            out.set_outcome(v1, a, Outcome::accept());
        } else {
            out.set_outcome(v0, a, Outcome::accept());
            out.set_outcome(v1, a, Outcome::step(1, v0));  // !b | q
        }
    }
    out.set_start(v0);
    return out;
}

Automaton fixture_fig4() {
    TestDecl decl = fig4_decl();
    AtomSet b = AtomSet::none(decl.atom_count());
    b.insert(decl.parse_atom_label("t1"));
    return fixture_fig4(b);
}

Automaton fixture_fig5() {
    TestDecl decl = fig5_decl();
    Automaton out(decl);
    for (int i = 0; i < 8; ++i) out.add_state("v" + std::to_string(i));
    const int p = 0;
    const Atom a0 = 0, a1 = 1, a2 = 2, a3 = 3;
    auto acc = [&](int s, std::initializer_list<Atom> atoms) {
        for (Atom a : atoms) out.set_outcome(s, a, Outcome::accept());
    };
    acc(0, {a0, a1});
    acc(2, {a0, a1});
    acc(5, {a2, a3});
    acc(7, {a2, a3});
    out.set_outcome(0, a3, Outcome::step(p, 1));
    out.set_outcome(0, a2, Outcome::step(p, 2));
    out.set_outcome(2, a2, Outcome::step(p, 0));
    out.set_outcome(2, a3, Outcome::step(p, 3));
    out.set_outcome(5, a0, Outcome::step(p, 4));
    out.set_outcome(5, a1, Outcome::step(p, 7));
    out.set_outcome(7, a1, Outcome::step(p, 5));
    out.set_outcome(7, a0, Outcome::step(p, 6));
    return out;
}

Automaton fixture_fig5_quotient() {
    Automaton fig5 = fixture_fig5();
    // merge exactly v1 with v4 and v3 with v6; the other states stay apart
    std::vector<int> class_of(8);
    std::map<int, int> merge{{4, 1}, {6, 3}};
    int next = 0;
    std::vector<int> assigned(8, -1);
    for (int s = 0; s < 8; ++s) {
        int repr = merge.count(s) ? merge[s] : s;
        if (assigned[repr] < 0) assigned[repr] = next++;
        class_of[s] = assigned[repr];
    }
    return quotient_by_partition(fig5, class_of).automaton;
}

Automaton fixture_ploop(const AtomSet& b) {
    TestDecl decl({"t1"}, {"p"});
    if (b.universe() != decl.atom_count())
        throw std::invalid_argument("guard must range over the two atoms of {t1}");
    Automaton out(decl);
    int x0 = out.add_state("x0"), x1 = out.add_state("x1");
    for (Atom a = 0; a < decl.atom_count(); ++a) {
        Outcome o = b.contains(a) ? Outcome::step(0, x1) : Outcome::accept();
        out.set_outcome(x0, a, o);
        out.set_outcome(x1, a, o);
    }
    out.set_start(x0);
    return out;
}

Automaton fixture_ploop() {
    TestDecl decl({"t1"}, {"p"});
    AtomSet b = AtomSet::none(decl.atom_count());
    b.insert(decl.parse_atom_label("t1"));
    return fixture_ploop(b);
}

std::vector<std::string> fixture_names() { return {"fig4", "fig5", "fig5_quotient", "ploop"}; }

Automaton fixture_by_name(const std::string& name) {
    if (name == "fig4") return fixture_fig4();
    if (name == "fig5") return fixture_fig5();
    if (name == "fig5_quotient") return fixture_fig5_quotient();
    if (name == "ploop") return fixture_ploop();
    throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace gkat
