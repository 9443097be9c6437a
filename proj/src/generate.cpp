#include "gkat/generate.hpp"

#include <stdexcept>

namespace gkat {

BExpPtr random_bexp(Rng& rng, const TestDecl& decl, int max_depth) {
    if (max_depth <= 0 || decl.test_count() == 0) {
        if (decl.test_count() > 0 && rng.chance(0.7))
            return BExp::prim(rng.below(decl.test_count()));
        return rng.chance(0.5) ? BExp::one() : BExp::zero();
    }
    switch (rng.below(6)) {
        case 0: return BExp::prim(rng.below(decl.test_count()));
        case 1: return rng.chance(0.5) ? BExp::one() : BExp::zero();
        case 2: return BExp::negate(random_bexp(rng, decl, max_depth - 1));
        case 3:
        case 4:
            return BExp::conj(random_bexp(rng, decl, max_depth - 1),
                              random_bexp(rng, decl, max_depth - 1));
        default:
            return BExp::disj(random_bexp(rng, decl, max_depth - 1),
                              random_bexp(rng, decl, max_depth - 1));
    }
}

ExpPtr random_exp(Rng& rng, Context& ctx, int max_depth) {
    const TestDecl& decl = ctx.decl();
    const bool has_actions = decl.action_count() > 0;
    if (max_depth <= 0) {
        if (has_actions && rng.chance(0.6)) return ctx.act(rng.below(decl.action_count()));
        return ctx.test(random_bexp(rng, decl, 1));
    }
    switch (rng.below(12)) {
        case 0: return ctx.test(random_bexp(rng, decl, 2));
        case 1:
        case 2:
            if (has_actions) return ctx.act(rng.below(decl.action_count()));
            return ctx.test(random_bexp(rng, decl, 2));
        case 3:
        case 4:
        case 5:
        case 6:
            return ctx.seq(random_exp(rng, ctx, max_depth - 1),
                           random_exp(rng, ctx, max_depth - 1));
        case 7:
        case 8:
        case 9:
            return ctx.ifte(random_bexp(rng, decl, 2), random_exp(rng, ctx, max_depth - 1),
                            random_exp(rng, ctx, max_depth - 1));
        default:
            return ctx.loop(random_bexp(rng, decl, 2), random_exp(rng, ctx, max_depth - 1));
    }
}

ExpPtr random_productive_exp(Rng& rng, Context& ctx, int max_depth) {
    if (ctx.decl().action_count() == 0)
        throw std::invalid_argument("productive expressions need at least one action");
    ExpPtr e = random_exp(rng, ctx, max_depth);
    if (is_productive(e)) return e;
    return ctx.seq(ctx.act(rng.below(ctx.decl().action_count())), e);
}

Automaton random_automaton(Rng& rng, const TestDecl& decl, int n_states, double accept_p,
                           double step_p) {
    if (n_states <= 0) throw std::invalid_argument("need at least one state");
    if (decl.action_count() == 0) step_p = 0.0;
    Automaton out(decl);
    for (int s = 0; s < n_states; ++s) out.add_state("n" + std::to_string(s));
    const std::size_t n_atoms = decl.atom_count();
    for (int s = 0; s < n_states; ++s) {
        for (Atom a = 0; a < n_atoms; ++a) {
            if (rng.chance(step_p)) {
                out.set_outcome(
                    s, a, Outcome::step(rng.below(decl.action_count()), rng.below(n_states)));
            } else if (rng.chance(accept_p)) {
                out.set_outcome(s, a, Outcome::accept());
            }
        }
    }
    out.set_start(0);
    return out;
}

}  // namespace gkat
