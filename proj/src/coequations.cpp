#include "gkat/coequations.hpp"

#include <algorithm>
#include <map>

namespace gkat {

bool check_discrete(const Automaton& x) {
    for (int s = 0; s < x.state_count(); ++s)
        if (x.has_any_step(s)) return false;
    return true;
}

namespace {

// iterative Tarjan over step edges, components emitted in a deterministic
// order (roots by DFS finish)
std::vector<std::vector<int>> step_sccs(const Automaton& x, const std::vector<bool>& keep) {
    const int n = x.state_count();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    struct Frame {
        int v;
        Atom next_atom;
    };

    for (int root = 0; root < n; ++root) {
        if (!keep[root] || index[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next_atom < x.decl().atom_count()) {
                Atom a = f.next_atom++;
                Outcome o = x.outcome(f.v, a);
                if (!o.is_step() || !keep[o.target]) continue;
                int w = o.target;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    sccs.push_back(std::move(comp));
                }
            }
        }
    }
    return sccs;
}

bool has_internal_cycle(const Automaton& x, const std::vector<int>& scc) {
    if (scc.size() > 1) return true;
    int v = scc[0];
    for (Atom a = 0; a < x.decl().atom_count(); ++a) {
        Outcome o = x.outcome(v, a);
        if (o.is_step() && o.target == v) return true;
    }
    return false;
}

}  // namespace

NestingReport check_alternation(const Automaton& x) {
    std::vector<bool> keep(x.state_count(), true);
    if (x.has_start()) keep = reachable_from(x, x.start());

    NestingReport report;
    for (const auto& scc : step_sccs(x, keep)) {
        if (!has_internal_cycle(x, scc)) continue;
        std::map<std::vector<Atom>, int> seen;  // accept set -> state
        for (int s : scc) {
            AtomSet acc = x.accept_set(s);
            auto key = acc.to_vector();
            auto comp_key = acc.complement().to_vector();
            auto it = seen.find(comp_key);
            if (it != seen.end()) {
                report.passed = false;
                NestingViolation v;
                v.scc = scc;
                v.x = it->second;
                v.y = s;
                v.accept_of_x = x.accept_set(it->second);
                report.violation = std::move(v);
                return report;
            }
            seen.emplace(std::move(key), s);
        }
    }
    return report;
}

}  // namespace gkat
