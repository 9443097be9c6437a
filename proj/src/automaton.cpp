#include "gkat/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace gkat {

Automaton::Automaton(TestDecl decl) : decl_(std::move(decl)) {}

int Automaton::add_state(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty state name");
    if (index_.count(name)) throw std::invalid_argument("duplicate state name: " + name);
    int id = state_count();
    names_.push_back(name);
    index_[name] = id;
    delta_.emplace_back(decl_.atom_count(), Outcome::reject());
    return id;
}

int Automaton::state_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

void Automaton::set_start(int s) {
    if (s < 0 || s >= state_count()) throw std::out_of_range("start state out of range");
    start_ = s;
}

Outcome Automaton::outcome(int state, Atom a) const { return delta_.at(state).at(a); }

void Automaton::set_outcome(int state, Atom a, Outcome o) {
    if (o.kind == Outcome::Kind::Step) {
        if (o.target < 0 || o.target >= state_count())
            throw std::invalid_argument("step target out of range");
        if (o.action < 0 || o.action >= decl_.action_count())
            throw std::invalid_argument("step action out of range");
    }
    delta_.at(state).at(a) = o;
}

AtomSet Automaton::accept_set(int state) const {
    AtomSet s = AtomSet::none(decl_.atom_count());
    const auto& r = delta_.at(state);
    for (Atom a = 0; a < r.size(); ++a)
        if (r[a].kind == Outcome::Kind::Accept) s.insert(a);
    return s;
}

bool Automaton::has_any_step(int state) const {
    for (const Outcome& o : delta_.at(state))
        if (o.is_step()) return true;
    return false;
}

Derivative derive(Context& ctx, ExpPtr e, Atom a) {
    switch (e->kind) {
        case Exp::Kind::Test:
            return {e->guard.contains(a) ? Outcome::Kind::Accept : Outcome::Kind::Reject, -1,
                    nullptr};
        case Exp::Kind::Act: return {Outcome::Kind::Step, e->action, ctx.one()};
        case Exp::Kind::IfThenElse:
            return derive(ctx, e->guard.contains(a) ? e->lhs : e->rhs, a);
        case Exp::Kind::Seq: {
            Derivative d = derive(ctx, e->lhs, a);
            switch (d.kind) {
                case Outcome::Kind::Accept: return derive(ctx, e->rhs, a);
                case Outcome::Kind::Reject: return d;
                case Outcome::Kind::Step:
                    return {Outcome::Kind::Step, d.action, ctx.seq(d.target, e->rhs)};
            }
            break;
        }
        case Exp::Kind::While: {
            if (!e->guard.contains(a)) return {Outcome::Kind::Accept, -1, nullptr};
            Derivative d = derive(ctx, e->lhs, a);
            if (d.kind == Outcome::Kind::Step)
                return {Outcome::Kind::Step, d.action, ctx.seq(d.target, e)};
            return {Outcome::Kind::Reject, -1, nullptr};
        }
    }
    throw std::logic_error("unreachable");
}

BrzozowskiResult brzozowski(Context& ctx, ExpPtr e) {
    Automaton aut(ctx.decl());
    std::vector<ExpPtr> exprs;
    std::unordered_map<ExpPtr, int> index;
    std::deque<int> work;

    auto visit = [&](ExpPtr g) {
        auto it = index.find(g);
        if (it != index.end()) return it->second;
        int id = aut.add_state("s" + std::to_string(exprs.size()));
        exprs.push_back(g);
        index.emplace(g, id);
        work.push_back(id);
        return id;
    };

    visit(e);
    aut.set_start(0);
    const std::size_t n_atoms = ctx.decl().atom_count();
    while (!work.empty()) {
        int s = work.front();
        work.pop_front();
        ExpPtr g = exprs[s];
        for (Atom a = 0; a < n_atoms; ++a) {
            Derivative d = derive(ctx, g, a);
            switch (d.kind) {
                case Outcome::Kind::Reject: break;
                case Outcome::Kind::Accept: aut.set_outcome(s, a, Outcome::accept()); break;
                case Outcome::Kind::Step:
                    aut.set_outcome(s, a, Outcome::step(d.action, visit(d.target)));
                    break;
            }
        }
    }
    return {std::move(aut), std::move(exprs)};
}

ExpPtr reconstruct(Context& ctx, ExpPtr e) {
    const std::size_t n_atoms = ctx.decl().atom_count();
    std::vector<std::pair<Atom, Derivative>> steps;
    for (Atom a = 0; a < n_atoms; ++a) {
        Derivative d = derive(ctx, e, a);
        if (d.kind == Outcome::Kind::Step) steps.emplace_back(a, d);
    }
    ExpPtr sum = ctx.zero();
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        ExpPtr term = ctx.seq(ctx.act(it->second.action), it->second.target);
        sum = ctx.ifte(atom_to_bexp(it->first, ctx.decl()), term, sum);
    }
    return ctx.ifte(atom_set_to_bexp(termination_set(e), ctx.decl()), ctx.one(), sum);
}

namespace {

void require_same_decl(const Automaton& x, const Automaton& y) {
    if (x.decl() != y.decl())
        throw std::invalid_argument("automata over different test declarations");
}

Outcome map_outcome(Outcome o, const std::vector<int>& state_map) {
    if (o.is_step()) o.target = state_map.at(o.target);
    return o;
}

}  // namespace

Automaton coproduct(const Automaton& x, const Automaton& y) {
    require_same_decl(x, y);
    bool clash = false;
    for (int i = 0; i < y.state_count() && !clash; ++i)
        clash = x.state_index(y.state_name(i)) >= 0;

    Automaton out(x.decl());
    std::vector<int> xmap(x.state_count()), ymap(y.state_count());
    for (int i = 0; i < x.state_count(); ++i)
        xmap[i] = out.add_state(clash ? "0:" + x.state_name(i) : x.state_name(i));
    for (int i = 0; i < y.state_count(); ++i)
        ymap[i] = out.add_state(clash ? "1:" + y.state_name(i) : y.state_name(i));

    const std::size_t n_atoms = x.decl().atom_count();
    for (int i = 0; i < x.state_count(); ++i)
        for (Atom a = 0; a < n_atoms; ++a)
            out.set_outcome(xmap[i], a, map_outcome(x.outcome(i, a), xmap));
    for (int i = 0; i < y.state_count(); ++i)
        for (Atom a = 0; a < n_atoms; ++a)
            out.set_outcome(ymap[i], a, map_outcome(y.outcome(i, a), ymap));
    if (x.has_start()) out.set_start(xmap[x.start()]);
    return out;
}

Automaton uniform_continuation(const Automaton& x, const std::vector<int>& u,
                               const std::vector<Outcome>& h) {
    const std::size_t n_atoms = x.decl().atom_count();
    if (h.size() != n_atoms)
        throw std::invalid_argument("continuation map must cover every atom");
    for (const Outcome& o : h)
        if (o.is_step() && (o.target < 0 || o.target >= x.state_count()))
            throw std::invalid_argument("continuation map has a dangling target");

    std::vector<bool> in_u(x.state_count(), false);
    for (int s : u) {
        if (s < 0 || s >= x.state_count())
            throw std::invalid_argument("continuation set contains an unknown state");
        in_u[s] = true;
    }

    Automaton out = x;
    for (int s = 0; s < x.state_count(); ++s) {
        if (!in_u[s]) continue;
        for (Atom a = 0; a < n_atoms; ++a)
            if (x.outcome(s, a).kind == Outcome::Kind::Accept) out.set_outcome(s, a, h[a]);
    }
    return out;
}

std::vector<bool> reachable_from(const Automaton& x, int s) {
    std::vector<bool> seen(x.state_count(), false);
    std::deque<int> work{s};
    seen.at(s) = true;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (const Outcome& o : x.row(v))
            if (o.is_step() && !seen[o.target]) {
                seen[o.target] = true;
                work.push_back(o.target);
            }
    }
    return seen;
}

Automaton restrict_to(const Automaton& x, const std::vector<int>& states) {
    std::vector<int> map(x.state_count(), -1);
    Automaton out(x.decl());
    for (int s : states) map.at(s) = out.add_state(x.state_name(s));
    const std::size_t n_atoms = x.decl().atom_count();
    for (int s : states) {
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome o = x.outcome(s, a);
            if (o.is_step()) {
                if (map[o.target] < 0)
                    throw std::invalid_argument(
                        "restriction is not closed under steps: " + x.state_name(s) +
                        " leaves the subset");
                o.target = map[o.target];
            }
            out.set_outcome(map[s], a, o);
        }
    }
    if (x.has_start() && map[x.start()] >= 0) out.set_start(map[x.start()]);
    return out;
}

namespace {

QuotientResult build_quotient(const Automaton& x, const std::vector<int>& class_of,
                              int n_classes) {
    // representative = first member; members must agree, else the partition
    // is not a congruence
    std::vector<int> rep(n_classes, -1);
    std::vector<std::vector<int>> members(n_classes);
    for (int s = 0; s < x.state_count(); ++s) {
        int c = class_of.at(s);
        if (c < 0 || c >= n_classes) throw std::invalid_argument("bad class index");
        if (rep[c] < 0) rep[c] = s;
        members[c].push_back(s);
    }
    for (int c = 0; c < n_classes; ++c)
        if (rep[c] < 0) throw std::invalid_argument("empty class in partition");

    const std::size_t n_atoms = x.decl().atom_count();
    for (int s = 0; s < x.state_count(); ++s) {
        int r = rep[class_of[s]];
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome os = x.outcome(s, a), orp = x.outcome(r, a);
            bool ok = os.kind == orp.kind &&
                      (!os.is_step() ||
                       (os.action == orp.action && class_of[os.target] == class_of[orp.target]));
            if (!ok)
                throw std::invalid_argument("partition is not a congruence: states " +
                                            x.state_name(s) + " and " + x.state_name(r) +
                                            " disagree on atom " +
                                            x.decl().atom_label(a));
        }
    }

    Automaton out(x.decl());
    for (int c = 0; c < n_classes; ++c) {
        std::string name = x.state_name(members[c][0]);
        for (std::size_t i = 1; i < members[c].size(); ++i)
            name += "+" + x.state_name(members[c][i]);
        out.add_state(name);
    }
    for (int c = 0; c < n_classes; ++c) {
        int r = rep[c];
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome o = x.outcome(r, a);
            if (o.is_step()) o.target = class_of[o.target];
            out.set_outcome(c, a, o);
        }
    }
    if (x.has_start()) out.set_start(class_of[x.start()]);
    return {std::move(out), class_of};
}

}  // namespace

QuotientResult quotient_by_bisimilarity(const Automaton& x) {
    const int n = x.state_count();
    const std::size_t n_atoms = x.decl().atom_count();
    if (n == 0) return {Automaton(x.decl()), {}};

    // Moore-style refinement; signatures start from per-atom outcome kinds
    // and actions, then pick up target classes until stable.
    std::vector<int> class_of(n, 0);
    int n_classes = 1;
    for (bool changed = true; changed;) {
        std::map<std::vector<int>, int> sig_class;
        std::vector<int> next(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> sig;
            sig.reserve(n_atoms * 3 + 1);
            sig.push_back(class_of[s]);
            for (Atom a = 0; a < n_atoms; ++a) {
                Outcome o = x.outcome(s, a);
                sig.push_back(static_cast<int>(o.kind));
                sig.push_back(o.action);
                sig.push_back(o.is_step() ? class_of[o.target] : -1);
            }
            auto [it, fresh] = sig_class.emplace(std::move(sig), -1);
            if (fresh) it->second = static_cast<int>(sig_class.size()) - 1;
            next[s] = it->second;
        }
        // renumber classes by first occurrence so output naming is stable
        std::vector<int> order(sig_class.size(), -1);
        int k = 0;
        for (int s = 0; s < n; ++s)
            if (order[next[s]] < 0) order[next[s]] = k++;
        for (int s = 0; s < n; ++s) next[s] = order[next[s]];
        changed = k != n_classes || next != class_of;
        class_of = std::move(next);
        n_classes = k;
    }
    return build_quotient(x, class_of, n_classes);
}

QuotientResult quotient_by_partition(const Automaton& x, const std::vector<int>& class_of) {
    if (static_cast<int>(class_of.size()) != x.state_count())
        throw std::invalid_argument("partition size does not match state count");
    int n_classes = 0;
    for (int c : class_of) n_classes = std::max(n_classes, c + 1);
    return build_quotient(x, class_of, n_classes);
}

std::vector<bool> dead_states(const Automaton& x) {
    const int n = x.state_count();
    const std::size_t n_atoms = x.decl().atom_count();
    std::vector<std::vector<int>> rev(n);
    std::deque<int> work;
    std::vector<bool> live(n, false);
    for (int s = 0; s < n; ++s) {
        bool accepts = false;
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome o = x.outcome(s, a);
            if (o.kind == Outcome::Kind::Accept) accepts = true;
            if (o.is_step()) rev[o.target].push_back(s);
        }
        if (accepts) {
            live[s] = true;
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (int p : rev[v])
            if (!live[p]) {
                live[p] = true;
                work.push_back(p);
            }
    }
    std::vector<bool> dead(n);
    for (int s = 0; s < n; ++s) dead[s] = !live[s];
    return dead;
}

Automaton normalize(const Automaton& x) {
    std::vector<bool> dead = dead_states(x);
    Automaton out = x;
    const std::size_t n_atoms = x.decl().atom_count();
    for (int s = 0; s < x.state_count(); ++s)
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome o = x.outcome(s, a);
            if (o.is_step() && dead[o.target]) out.set_outcome(s, a, Outcome::reject());
        }
    return out;
}

Automaton pointed_seq(const Automaton& x, int sx, const Automaton& y, int sy) {
    require_same_decl(x, y);
    Automaton out(x.decl());
    std::vector<int> xmap(x.state_count()), ymap(y.state_count());
    for (int i = 0; i < x.state_count(); ++i) xmap[i] = out.add_state("l:" + x.state_name(i));
    for (int i = 0; i < y.state_count(); ++i) ymap[i] = out.add_state("r:" + y.state_name(i));
    const std::size_t n_atoms = x.decl().atom_count();
    for (int i = 0; i < x.state_count(); ++i) {
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome o = x.outcome(i, a);
            // an accepting entry of the left factor hands the same atom to
            // the right factor's start
            if (o.kind == Outcome::Kind::Accept)
                out.set_outcome(xmap[i], a, map_outcome(y.outcome(sy, a), ymap));
            else
                out.set_outcome(xmap[i], a, map_outcome(o, xmap));
        }
    }
    for (int i = 0; i < y.state_count(); ++i)
        for (Atom a = 0; a < n_atoms; ++a)
            out.set_outcome(ymap[i], a, map_outcome(y.outcome(i, a), ymap));
    out.set_start(xmap.at(sx));
    return out;
}

Automaton pointed_union(const Automaton& x, int sx, const Automaton& y, int sy,
                        const AtomSet& b) {
    require_same_decl(x, y);
    Automaton out(x.decl());
    int root = out.add_state("u");
    std::vector<int> xmap(x.state_count()), ymap(y.state_count());
    for (int i = 0; i < x.state_count(); ++i) xmap[i] = out.add_state("l:" + x.state_name(i));
    for (int i = 0; i < y.state_count(); ++i) ymap[i] = out.add_state("r:" + y.state_name(i));
    const std::size_t n_atoms = x.decl().atom_count();
    for (Atom a = 0; a < n_atoms; ++a)
        out.set_outcome(root, a,
                        b.contains(a) ? map_outcome(x.outcome(sx, a), xmap)
                                      : map_outcome(y.outcome(sy, a), ymap));
    for (int i = 0; i < x.state_count(); ++i)
        for (Atom a = 0; a < n_atoms; ++a)
            out.set_outcome(xmap[i], a, map_outcome(x.outcome(i, a), xmap));
    for (int i = 0; i < y.state_count(); ++i)
        for (Atom a = 0; a < n_atoms; ++a)
            out.set_outcome(ymap[i], a, map_outcome(y.outcome(i, a), ymap));
    out.set_start(root);
    return out;
}

Automaton pointed_loop(const Automaton& x, int sx, const AtomSet& b) {
    Automaton out(x.decl());
    int root = out.add_state("loop");
    std::vector<int> xmap(x.state_count());
    for (int i = 0; i < x.state_count(); ++i) xmap[i] = out.add_state("l:" + x.state_name(i));
    const std::size_t n_atoms = x.decl().atom_count();

    // loop row: exit atoms accept, guard atoms run one body step
    std::vector<Outcome> loop_row(n_atoms);
    for (Atom a = 0; a < n_atoms; ++a) {
        if (!b.contains(a)) {
            loop_row[a] = Outcome::accept();
        } else {
            Outcome o = x.outcome(sx, a);
            loop_row[a] = o.is_step() ? Outcome::step(o.action, xmap[o.target])
                                      : Outcome::reject();
        }
        out.set_outcome(root, a, loop_row[a]);
    }
    // state i plays the body derivative followed by the loop again
    for (int i = 0; i < x.state_count(); ++i) {
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome o = x.outcome(i, a);
            if (o.kind == Outcome::Kind::Accept)
                out.set_outcome(xmap[i], a, loop_row[a]);
            else
                out.set_outcome(xmap[i], a, map_outcome(o, xmap));
        }
    }
    out.set_start(root);
    return out;
}

using json = nlohmann::ordered_json;

std::string export_json(const Automaton& x) {
    json j;
    j["tests"] = x.decl().tests();
    j["actions"] = x.decl().actions();
    j["states"] = x.state_names();
    if (x.has_start()) j["start"] = x.state_name(x.start());
    json delta = json::object();
    const std::size_t n_atoms = x.decl().atom_count();
    for (int s = 0; s < x.state_count(); ++s) {
        json row = json::object();
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome o = x.outcome(s, a);
            if (o.kind == Outcome::Kind::Reject) continue;
            if (o.kind == Outcome::Kind::Accept)
                row[x.decl().atom_label(a)] = "accept";
            else
                row[x.decl().atom_label(a)] = {{"act", x.decl().action_name(o.action)},
                                               {"to", x.state_name(o.target)}};
        }
        delta[x.state_name(s)] = std::move(row);
    }
    j["delta"] = std::move(delta);
    return j.dump(2) + "\n";
}

Automaton import_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("automaton JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("tests") || !j.contains("actions") ||
        !j.contains("states"))
        throw std::invalid_argument(
            "automaton JSON must carry 'tests', 'actions' and 'states'");

    auto names = [](const json& arr, const char* what) {
        if (!arr.is_array())
            throw std::invalid_argument(std::string("automaton JSON: '") + what +
                                        "' must be an array of names");
        std::vector<std::string> out;
        for (const auto& v : arr) {
            if (!v.is_string())
                throw std::invalid_argument(std::string("automaton JSON: '") + what +
                                            "' must contain strings");
            out.push_back(v.get<std::string>());
        }
        return out;
    };

    TestDecl decl(names(j["tests"], "tests"), names(j["actions"], "actions"));
    Automaton out(decl);
    for (const std::string& s : names(j["states"], "states")) out.add_state(s);

    if (j.contains("delta")) {
        const json& delta = j["delta"];
        if (!delta.is_object())
            throw std::invalid_argument("automaton JSON: 'delta' must be an object");
        for (auto it = delta.begin(); it != delta.end(); ++it) {
            int s = out.state_index(it.key());
            if (s < 0) throw std::invalid_argument("delta mentions unknown state: " + it.key());
            for (auto at = it.value().begin(); at != it.value().end(); ++at) {
                Atom a = decl.parse_atom_label(at.key());
                const json& v = at.value();
                if (v.is_string()) {
                    const std::string& kind = v.get_ref<const std::string&>();
                    if (kind == "accept")
                        out.set_outcome(s, a, Outcome::accept());
                    else if (kind == "reject")
                        out.set_outcome(s, a, Outcome::reject());
                    else
                        throw std::invalid_argument("bad outcome '" + kind + "'");
                } else if (v.is_object() && v.contains("act") && v.contains("to")) {
                    int act = decl.action_index(v["act"].get<std::string>());
                    if (act < 0)
                        throw std::invalid_argument("delta uses undeclared action: " +
                                                    v["act"].get<std::string>());
                    int to = out.state_index(v["to"].get<std::string>());
                    if (to < 0)
                        throw std::invalid_argument("delta steps to unknown state: " +
                                                    v["to"].get<std::string>());
                    out.set_outcome(s, a, Outcome::step(act, to));
                } else {
                    throw std::invalid_argument(
                        "outcome must be \"accept\", \"reject\" or {\"act\",\"to\"}");
                }
            }
        }
    }
    if (j.contains("start")) {
        int s = out.state_index(j["start"].get<std::string>());
        if (s < 0) throw std::invalid_argument("unknown start state");
        out.set_start(s);
    }
    return out;
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string export_dot(const Automaton& x) {
    std::string out = "digraph gkat {\n  rankdir=LR;\n  node [shape=circle, fontsize=11];\n";
    if (x.has_start()) {
        out += "  \"__start\" [shape=point];\n";
        out += "  \"__start\" -> " + dot_quote(x.state_name(x.start())) + ";\n";
    }
    const std::size_t n_atoms = x.decl().atom_count();
    for (int s = 0; s < x.state_count(); ++s) {
        out += "  " + dot_quote(x.state_name(s)) + ";\n";
        // step edges grouped per (target, action)
        std::map<std::pair<int, int>, std::string> grouped;
        std::string accepts;
        for (Atom a = 0; a < n_atoms; ++a) {
            Outcome o = x.outcome(s, a);
            if (o.is_step()) {
                std::string& atoms = grouped[{o.target, o.action}];
                if (!atoms.empty()) atoms += ',';
                atoms += x.decl().atom_label(a);
            } else if (o.kind == Outcome::Kind::Accept) {
                if (!accepts.empty()) accepts += ',';
                accepts += x.decl().atom_label(a);
            }
        }
        for (const auto& [key, atoms] : grouped) {
            out += "  " + dot_quote(x.state_name(s)) + " -> " + dot_quote(x.state_name(key.first)) +
                   " [label=" + dot_quote(atoms + "|" + x.decl().action_name(key.second)) +
                   "];\n";
        }
        if (!accepts.empty()) {
            std::string acc_node = x.state_name(s) + ":acc";
            out += "  " + dot_quote(acc_node) + " [shape=plaintext, label=" +
                   dot_quote(accepts) + "];\n";
            out += "  " + dot_quote(x.state_name(s)) + " -> " + dot_quote(acc_node) +
                   " [color=\"black:invis:black\", arrowhead=empty];\n";
        }
    }
    out += "}\n";
    return out;
}

bool equal_exact(const Automaton& a, const Automaton& b) {
    if (a.decl() != b.decl() || a.state_names() != b.state_names() || a.start() != b.start())
        return false;
    const std::size_t n_atoms = a.decl().atom_count();
    for (int s = 0; s < a.state_count(); ++s)
        for (Atom at = 0; at < n_atoms; ++at)
            if (!(a.outcome(s, at) == b.outcome(s, at))) return false;
    return true;
}

bool same_structure(const Automaton& a, const Automaton& b) {
    if (a.decl() != b.decl() || a.state_count() != b.state_count()) return false;
    const std::size_t n_atoms = a.decl().atom_count();
    for (int s = 0; s < a.state_count(); ++s) {
        int t = b.state_index(a.state_name(s));
        if (t < 0) return false;
        for (Atom at = 0; at < n_atoms; ++at) {
            Outcome oa = a.outcome(s, at), ob = b.outcome(t, at);
            if (oa.kind != ob.kind || oa.action != ob.action) return false;
            if (oa.is_step() && a.state_name(oa.target) != b.state_name(ob.target))
                return false;
        }
    }
    return true;
}

}  // namespace gkat
