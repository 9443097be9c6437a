#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gkat/coequations.hpp"
#include "gkat/equivalence.hpp"
#include "gkat/parse.hpp"
#include "gkat/trees.hpp"
#include "gkat/wellnested.hpp"

using json = nlohmann::ordered_json;

namespace {

// exit codes: 0 positive / success, 1 negative result, 2 error
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

int max_tests_from_env() {
    const char* env = std::getenv("GKAT_MAX_TESTS");
    if (!env) return gkat::TestDecl::kDefaultMaxTests;
    int v = std::atoi(env);
    if (v < 0 || v > 20) throw std::invalid_argument("GKAT_MAX_TESTS must be in 0..20");
    return v;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Session {
    gkat::SessionFile file;
    std::string dir;  // for resolving automaton references
};

Session load_session(const std::string& path) {
    Session s;
    s.file = gkat::parse_session(slurp(path), max_tests_from_env());
    auto slash = path.find_last_of('/');
    s.dir = slash == std::string::npos ? "" : path.substr(0, slash + 1);
    return s;
}

gkat::ExpPtr lookup_exp(const Session& s, const std::string& name) {
    auto it = s.file.exprs.find(name);
    if (it == s.file.exprs.end()) throw std::runtime_error("no expression named '" + name + "'");
    return it->second;
}

/// Named automaton: from an expression (Brzozowski) or a JSON reference.
gkat::Automaton lookup_automaton(const Session& s, const std::string& name) {
    auto it = s.file.exprs.find(name);
    if (it != s.file.exprs.end())
        return gkat::brzozowski(*s.file.ctx, it->second).automaton;
    auto ref = s.file.automaton_refs.find(name);
    if (ref != s.file.automaton_refs.end()) {
        std::string path = ref->second;
        if (!path.empty() && path[0] != '/') path = s.dir + path;
        return gkat::import_json(slurp(path));
    }
    throw std::runtime_error("no definition named '" + name + "'");
}

json counter_json(const gkat::CounterTrace& t, const gkat::TestDecl& decl) {
    json j;
    json word = json::array();
    for (gkat::Atom a : t.word) word.push_back(decl.atom_label(a));
    j["word"] = std::move(word);
    auto side = [&](const gkat::Outcome& o) -> json {
        switch (o.kind) {
            case gkat::Outcome::Kind::Accept: return "accept";
            case gkat::Outcome::Kind::Reject: return "reject";
            case gkat::Outcome::Kind::Step: return json{{"act", decl.action_name(o.action)}};
        }
        return nullptr;
    };
    j["left"] = side(t.left);
    j["right"] = side(t.right);
    return j;
}

json tree_json(const gkat::TreeK& t, const gkat::TestDecl& decl) {
    json entries = json::object();
    for (const auto& [w, v] : t.table()) {
        std::string word;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) word += '.';
            word += decl.atom_label(static_cast<gkat::Atom>(w[i]));
        }
        switch (v.kind) {
            case gkat::TreeVal::Kind::Zero: entries[word] = "0"; break;
            case gkat::TreeVal::Kind::One: entries[word] = "1"; break;
            case gkat::TreeVal::Kind::Act: entries[word] = decl.action_name(v.action); break;
        }
    }
    return entries;
}

int cmd_equiv(const std::string& file, const std::string& lhs, const std::string& rhs,
              const std::string& mode, bool as_json) {
    Session s = load_session(file);
    gkat::ExpPtr e = lookup_exp(s, lhs), f = lookup_exp(s, rhs);
    gkat::Automaton left = gkat::brzozowski(*s.file.ctx, e).automaton;
    gkat::Automaton right = gkat::brzozowski(*s.file.ctx, f).automaton;
    if (mode == "full") {
        left = gkat::normalize(left);
        right = gkat::normalize(right);
    }
    gkat::EquivResult r = gkat::bisimilar(left, 0, right, 0);
    const gkat::TestDecl& decl = s.file.ctx->decl();
    if (as_json) {
        json j;
        j["mode"] = mode;
        j["equivalent"] = r.equivalent;
        if (r.equivalent) {
            json pairs = json::array();
            for (auto [a, b] : r.witness.pairs)
                pairs.push_back({left.state_name(a), right.state_name(b)});
            j["bisimulation"] = std::move(pairs);
        } else {
            j["counterexample"] = counter_json(r.counter, decl);
        }
        std::cout << j.dump(2) << "\n";
    } else if (r.equivalent) {
        std::cout << "equivalent (" << mode << ")\n";
        std::cout << "bisimulation (" << lhs << " ~ " << rhs << " derivatives):\n";
        for (auto [a, b] : r.witness.pairs)
            std::cout << "  " << left.state_name(a) << " ~ " << right.state_name(b) << "\n";
    } else {
        std::cout << "not equivalent (" << mode << ")\n";
        std::cout << to_string(r.counter, decl) << "\n";
    }
    return r.equivalent ? kExitYes : kExitNo;
}

void check_dump_size(std::size_t n_atoms, int depth) {
    double paths = 1;
    for (int i = 0; i < depth && paths < 2e7; ++i) paths *= static_cast<double>(n_atoms);
    if (paths >= 2e7)
        throw std::runtime_error(
            "the dump could reach ~" + std::to_string(static_cast<long long>(paths)) +
            " entries; lower --depth or declare fewer tests");
}

int cmd_unfold(const std::string& file, const std::string& name, int depth, bool normalized,
               bool as_json) {
    Session s = load_session(file);
    gkat::Automaton aut = lookup_automaton(s, name);
    check_dump_size(aut.decl().atom_count(), depth);
    int start = aut.has_start() ? aut.start() : 0;
    gkat::TreeK t = normalized ? gkat::normalize_unfolding(aut, start, depth)
                               : gkat::unfold(aut, start, depth);
    if (as_json) {
        json j;
        j["name"] = name;
        j["depth"] = depth;
        j["entries"] = tree_json(t, aut.decl());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << gkat::dump(t, aut.decl());
    }
    return kExitYes;
}

int cmd_automaton(const std::string& file, const std::string& name, const std::string& format,
                  bool do_normalize) {
    Session s = load_session(file);
    gkat::Automaton aut = lookup_automaton(s, name);
    if (do_normalize) aut = gkat::normalize(aut);
    std::cout << (format == "dot" ? gkat::export_dot(aut) : gkat::export_json(aut));
    return kExitYes;
}

int cmd_check_nesting(const std::string& file, const std::string& name, bool as_json) {
    Session s = load_session(file);
    gkat::Automaton aut = lookup_automaton(s, name);
    gkat::NestingReport r = gkat::check_alternation(aut);
    const gkat::TestDecl& decl = aut.decl();
    if (as_json) {
        json j;
        j["passed"] = r.passed;
        if (r.violation) {
            json v;
            json scc = json::array();
            for (int st : r.violation->scc) scc.push_back(aut.state_name(st));
            v["scc"] = std::move(scc);
            v["x"] = aut.state_name(r.violation->x);
            v["y"] = aut.state_name(r.violation->y);
            json b = json::array();
            for (gkat::Atom a : r.violation->accept_of_x.to_vector())
                b.push_back(decl.atom_label(a));
            v["accept_of_x"] = std::move(b);
            j["violation"] = std::move(v);
        }
        std::cout << j.dump(2) << "\n";
    } else if (r.passed) {
        std::cout << "passed: no complementary accept pair on any step cycle\n";
    } else {
        std::cout << "violation: states " << aut.state_name(r.violation->x) << " and "
                  << aut.state_name(r.violation->y)
                  << " lie in one strongly connected component and accept complementary sets ("
                  << gkat::atom_set_to_string(r.violation->accept_of_x, decl)
                  << " vs its complement)\n";
    }
    return r.passed ? kExitYes : kExitNo;
}

int cmd_wellnested(const std::string& file, const std::string& name, int max_states,
                   bool as_json) {
    Session s = load_session(file);
    gkat::Automaton aut = lookup_automaton(s, name);
    gkat::WellNestedResult r = gkat::is_wellnested_bounded(aut, max_states);
    if (as_json) {
        json j;
        j["well_nested"] = r.well_nested;
        if (r.cert) j["certificate"] = gkat::to_string(*r.cert, aut.decl());
        std::cout << j.dump(2) << "\n";
    } else if (r.well_nested) {
        std::cout << "well-nested\n" << gkat::to_string(*r.cert, aut.decl());
    } else {
        std::cout << "not well-nested (exhaustive search up to " << max_states << " states)\n";
    }
    return r.well_nested ? kExitYes : kExitNo;
}

gkat::SalomaaSystem parse_system_json(const std::string& text,
                                      std::shared_ptr<gkat::Context>& ctx_out,
                                      std::vector<std::string>& var_names) {
    json j = json::parse(text);
    std::vector<std::string> tests, actions;
    for (const auto& t : j.at("tests")) tests.push_back(t.get<std::string>());
    for (const auto& a : j.at("actions")) actions.push_back(a.get<std::string>());
    ctx_out =
        std::make_shared<gkat::Context>(gkat::TestDecl(tests, actions, max_tests_from_env()));
    const gkat::TestDecl& decl = ctx_out->decl();

    for (const auto& v : j.at("variables")) var_names.push_back(v.get<std::string>());
    auto var_index = [&](const std::string& n) {
        for (std::size_t i = 0; i < var_names.size(); ++i)
            if (var_names[i] == n) return static_cast<int>(i);
        throw std::runtime_error("unknown variable: " + n);
    };

    gkat::SalomaaSystem sys;
    sys.rows.resize(var_names.size(),
                    gkat::SalomaaRow{{}, gkat::AtomSet::none(decl.atom_count())});
    std::vector<bool> seen(var_names.size(), false);
    for (const auto& eq : j.at("equations")) {
        int i = var_index(eq.at("var").get<std::string>());
        if (seen[i]) throw std::runtime_error("two equations for " + var_names[i]);
        seen[i] = true;
        gkat::SalomaaRow row;
        row.constant =
            gkat::denote(*gkat::parse_bexp(eq.at("constant").get<std::string>(), decl), decl);
        if (eq.contains("terms")) {
            for (const auto& term : eq.at("terms")) {
                gkat::SalomaaTerm t;
                t.var = var_index(term.at("to").get<std::string>());
                t.guard = gkat::denote(
                    *gkat::parse_bexp(term.at("guard").get<std::string>(), decl), decl);
                t.coeff = gkat::parse_exp(term.at("coeff").get<std::string>(), *ctx_out);
                row.terms.push_back(std::move(t));
            }
        }
        sys.rows[i] = std::move(row);
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw std::runtime_error("no equation for " + var_names[i]);
    return sys;
}

int cmd_solve(const std::string& system_file, const std::string& automaton_file, int depth,
              bool as_json) {
    std::shared_ptr<gkat::Context> ctx;
    std::vector<std::string> var_names;
    gkat::SalomaaSystem sys;
    if (!system_file.empty()) {
        sys = parse_system_json(slurp(system_file), ctx, var_names);
    } else {
        gkat::Automaton aut = gkat::import_json(slurp(automaton_file));
        ctx = std::make_shared<gkat::Context>(aut.decl());
        var_names = aut.state_names();
        sys = gkat::extract_salomaa(*ctx, aut);
    }
    check_dump_size(ctx->decl().atom_count(), depth);
    gkat::SalomaaSolveResult r = gkat::solve_salomaa(*ctx, sys, depth);
    const gkat::TestDecl& decl = ctx->decl();
    if (as_json) {
        json j;
        j["depth"] = depth;
        j["iterations"] = r.iterations;
        json vars = json::object();
        for (std::size_t i = 0; i < var_names.size(); ++i)
            vars[var_names[i]] = tree_json(r.solution[i], decl);
        j["variables"] = std::move(vars);
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < var_names.size(); ++i) {
            std::cout << var_names[i] << ":\n";
            std::cout << gkat::dump(r.solution[i], decl);
        }
    }
    return kExitYes;
}

int cmd_fixtures(const std::string& name, const std::string& guard, const std::string& format) {
    gkat::Automaton aut = [&]() {
        if (guard.empty()) return gkat::fixture_by_name(name);
        gkat::TestDecl decl({"t1"}, {"p", "q"});
        gkat::AtomSet b = gkat::denote(*gkat::parse_bexp(guard, decl), decl);
        if (name == "fig4") return gkat::fixture_fig4(b);
        if (name == "ploop") return gkat::fixture_ploop(b);
        throw std::runtime_error("only fig4 and ploop take a guard");
    }();
    std::cout << (format == "dot" ? gkat::export_dot(aut) : gkat::export_json(aut));
    return kExitYes;
}

int cmd_axioms(const std::string& file, int samples, uint64_t seed, bool as_json) {
    Session s = load_session(file);
    gkat::AxiomCheckReport r = gkat::check_axiom_suite(s.file.ctx->decl(), samples, seed);
    if (as_json) {
        json rows = json::array();
        for (const auto& row : r.rows)
            rows.push_back({{"axiom", row.axiom},
                            {"samples", row.samples},
                            {"failures", row.failures},
                            {"note", row.note}});
        json j;
        j["passed"] = r.all_passed();
        j["rows"] = std::move(rows);
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& row : r.rows) {
            std::cout << row.axiom << ": " << (row.failures == 0 ? "pass" : "FAIL") << " ("
                      << row.samples << " samples";
            if (row.failures) std::cout << ", " << row.failures << " failures; " << row.note;
            std::cout << ")\n";
        }
    }
    return r.all_passed() ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GKAT toolkit: parse while-programs, decide equivalence, unfold behaviors,"
                 " normalize automata, solve left-affine systems and analyze nesting"};
    app.require_subcommand(1);

    int max_depth_cap = 12;
    app.add_option("--max-depth", max_depth_cap, "upper bound for --depth options")
        ->capture_default_str();

    std::string file, name, lhs, rhs, mode = "full", format = "json", guard, system_file,
                            automaton_file;
    int depth = 3, max_states = 10, samples = 50;
    uint64_t seed = 1;
    bool as_json = false, normalized = false;

    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two named expressions");
    equiv->add_option("file", file)->required();
    equiv->add_option("name1", lhs)->required();
    equiv->add_option("name2", rhs)->required();
    equiv->add_option("--mode", mode, "full (early termination) or no-early-termination")
        ->check(CLI::IsMember({"full", "no-early-termination"}))
        ->capture_default_str();
    equiv->add_flag("--json", as_json);

    auto* unfold = app.add_subcommand("unfold", "depth-k behavior tree of a definition");
    unfold->add_option("file", file)->required();
    unfold->add_option("name", name)->required();
    unfold->add_option("--depth", depth)->required();
    unfold->add_flag("--normalized", normalized, "prune steps into dead states");
    unfold->add_flag("--json", as_json);

    auto* automaton = app.add_subcommand("automaton", "derivative automaton of a definition");
    automaton->add_option("file", file)->required();
    automaton->add_option("name", name)->required();
    automaton->add_option("--format", format)
        ->check(CLI::IsMember({"json", "dot"}))
        ->capture_default_str();
    automaton->add_flag("--json", as_json, "same as --format json");

    auto* normalize = app.add_subcommand("normalize", "normalized derivative automaton");
    normalize->add_option("file", file)->required();
    normalize->add_option("name", name)->required();
    normalize->add_option("--format", format)
        ->check(CLI::IsMember({"json", "dot"}))
        ->capture_default_str();
    normalize->add_flag("--json", as_json, "same as --format json");

    auto* nesting = app.add_subcommand("check-nesting", "complementary-pair cycle check");
    nesting->add_option("file", file)->required();
    nesting->add_option("name", name)->required();
    nesting->add_flag("--json", as_json);

    auto* wellnested = app.add_subcommand("wellnested", "bounded well-nestedness search");
    wellnested->add_option("file", file)->required();
    wellnested->add_option("name", name)->required();
    wellnested->add_option("--max-states", max_states)->capture_default_str();
    wellnested->add_flag("--json", as_json);

    auto* solve = app.add_subcommand("solve", "solve a left-affine system to a given depth");
    auto* sysopt = solve->add_option("--system", system_file, "system description (JSON)");
    auto* autopt = solve->add_option("--automaton", automaton_file,
                                     "extract the system of an automaton (JSON)");
    sysopt->excludes(autopt);
    solve->add_option("--depth", depth)->required();
    solve->add_flag("--json", as_json);

    auto* fixtures = app.add_subcommand("fixtures", "emit a named example automaton");
    fixtures->add_option("name", name)->required()->check(
        CLI::IsMember(gkat::fixture_names()));
    fixtures->add_option("--guard", guard, "guard for fig4/ploop (over tests {t1})");
    fixtures->add_option("--format", format)
        ->check(CLI::IsMember({"json", "dot"}))
        ->capture_default_str();
    fixtures->add_flag("--json", as_json, "same as --format json");

    auto* axioms = app.add_subcommand("axioms", "random instantiations of the axiom schemas");
    axioms->add_option("file", file, "session file providing the declaration")->required();
    axioms->add_option("--samples", samples)->capture_default_str();
    axioms->add_option("--seed", seed)->capture_default_str();
    axioms->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
        if (depth < 1 || depth > max_depth_cap)
            throw std::runtime_error("--depth must lie in 1.." + std::to_string(max_depth_cap));

        if (as_json) format = "json";
        if (equiv->parsed()) return cmd_equiv(file, lhs, rhs, mode, as_json);
        if (unfold->parsed()) return cmd_unfold(file, name, depth, normalized, as_json);
        if (automaton->parsed()) return cmd_automaton(file, name, format, false);
        if (normalize->parsed()) return cmd_automaton(file, name, format, true);
        if (nesting->parsed()) return cmd_check_nesting(file, name, as_json);
        if (wellnested->parsed()) return cmd_wellnested(file, name, max_states, as_json);
        if (solve->parsed()) {
            if (system_file.empty() && automaton_file.empty())
                throw std::runtime_error("solve needs --system or --automaton");
            return cmd_solve(system_file, automaton_file, depth, as_json);
        }
        if (fixtures->parsed()) return cmd_fixtures(name, guard, format);
        if (axioms->parsed()) return cmd_axioms(file, samples, seed, as_json);
        return kExitError;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitYes : kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
