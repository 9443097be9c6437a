#ifndef GKAT_GENERATE_HPP
#define GKAT_GENERATE_HPP

#include <random>

#include "gkat/automaton.hpp"
#include "gkat/syntax.hpp"

namespace gkat {

/// Seeded RNG wrapper so every sampled artifact is reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    int below(int n) { return static_cast<int>(engine_() % static_cast<uint64_t>(n)); }
    bool chance(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p;
    }
    uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

BExpPtr random_bexp(Rng& rng, const TestDecl& decl, int max_depth);

ExpPtr random_exp(Rng& rng, Context& ctx, int max_depth);

/// Like random_exp but guaranteed productive (prefixes an action when the
/// draw accepts some atom immediately).
ExpPtr random_productive_exp(Rng& rng, Context& ctx, int max_depth);

/// Random total transition structure; entries are steps with probability
/// step_p, otherwise accept with probability accept_p, otherwise reject.
/// Start is state 0.
Automaton random_automaton(Rng& rng, const TestDecl& decl, int n_states, double accept_p,
                           double step_p);

}  // namespace gkat

#endif  // GKAT_GENERATE_HPP
