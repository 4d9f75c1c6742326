#pragma once

#include <vector>

#include "kappa/flows.hpp"
#include "kappa/hatalg.hpp"

namespace kappa {

/// Enumerates coordinate monomials of total degree <= bound (including 1).
inline std::vector<Poly> x_monomials_up_to(const Context* ctx, int bound) {
    std::vector<Poly> out;
    std::vector<Mono> cur{Mono::unit()};
    out.push_back(Poly::one(ctx));
    for (int d = 1; d <= bound; ++d) {
        std::vector<Mono> next;
        for (auto& m : cur)
            for (int mu = (m.e.empty() ? 0 : var_comp(m.e.back().first)); mu < ctx->dim(); ++mu)
                next.push_back(m * Mono::var(VarKind::X, mu));
        for (auto& m : next) out.push_back(Poly::mono(ctx, m, GaussRat::one()));
        cur = std::move(next);
    }
    return out;
}

/// Star products of a fixed realization. Two independent computation paths
/// are kept: T^{-1} followed by Weyl multiplication, and coefficient
/// extraction from the plane-wave kernel e^{i D(k,q) x}; their agreement is
/// itself one of the acceptance checks.
class Star {
public:
    explicit Star(Realization r) : r_(std::move(r)), alg_(r_), D_(D_map(r_)) {}

    const Realization& realization() const { return r_; }
    const MomentumMap& kernel() const { return D_; }
    HatAlgebra& hat() { return alg_; }

    /// e^{ikx} * e^{iqx} = e^{i D(k,q) x}: the exponent map.
    const MomentumMap& star_planewaves() const { return D_; }

    /// Path A: (f * g) = fhat ghat acting on 1 = realize(T^{-1} f) acting on g.
    Poly star(const Poly& f, const Poly& g) const {
        return alg_.realize(alg_.unhat(f)).act(g);
    }

    /// Path B: formal differentiation of e^{i D(k,q) x} at k = q = 0.
    Poly star_kernel(const Poly& f, const Poly& g) const {
        const Context* ctx = r_.ctx();
        int degf = std::max(f.degree_in(VarKind::X), 0);
        int degg = std::max(g.degree_in(VarKind::X), 0);
        int J = degf + degg;
        // e^{i D x} expanded to total (k, q)-degree J
        Poly Dx(ctx);
        for (int al = 0; al < ctx->dim(); ++al)
            Dx += D_[al] * Poly::var(ctx, VarKind::X, al).scaled(GaussRat(ctx->eta(al)));
        Poly E = Poly::one(ctx), pw = Poly::one(ctx);
        GaussRat fact(1);
        for (int j = 1; j <= J; ++j) {
            pw = pw * Dx.times_i();
            fact = fact / GaussRat(j);
            E += pw.scaled(fact);
        }
        std::set<VarKind> kinds{VarKind::K, VarKind::Q};

        Poly out(ctx);
        for (auto& [mf, cf] : f.terms()) {
            Mono fx = mf.project({VarKind::X});
            Mono frest = mf.exclude({VarKind::X});
            for (auto& [mg, cg] : g.terms()) {
                Mono gx = mg.project({VarKind::X});
                Mono grest = mg.exclude({VarKind::X});
                // pattern k^I q^J and the matching prefactor
                Mono pat;
                GaussRat pref = cf * cg;
                GaussRat fcts(1);
                int total = 0;
                for (auto& [v, e] : fx.e) {
                    int mu = var_comp(v);
                    pat = pat * Mono::var(VarKind::K, mu, e);
                    for (int t = 1; t <= e; ++t) fcts = fcts * GaussRat(t);
                    if (ctx->eta(mu) < 0 && (e % 2)) pref = -pref;
                    total += e;
                }
                for (auto& [v, e] : gx.e) {
                    int mu = var_comp(v);
                    pat = pat * Mono::var(VarKind::Q, mu, e);
                    for (int t = 1; t <= e; ++t) fcts = fcts * GaussRat(t);
                    if (ctx->eta(mu) < 0 && (e % 2)) pref = -pref;
                    total += e;
                }
                // (-i)^total
                GaussRat itot(1);
                for (int t = 0; t < total; ++t) itot = itot * (-GaussRat::i());
                Poly coeff = E.coefficient_of(kinds, pat);
                out += coeff.scaled(pref * fcts * itot)
                           * Poly::mono(ctx, frest * grest, GaussRat::one());
            }
        }
        return out;
    }

    /// (f*g)*h - f*(g*h) on all monomial triples within the degree bound;
    /// zero for Lie-type noncommutativity.
    bool check_associativity(int degree_bound) const {
        auto monos = x_monomials_up_to(r_.ctx(), degree_bound);
        for (auto& f : monos)
            for (auto& g : monos)
                for (auto& h : monos)
                    if (!(star(star(f, g), h) == star(f, star(g, h)))) return false;
        return true;
    }

    /// Kernel-level associativity: D(D(k,q), w) = D(k, D(q,w)).
    bool check_associativity_kernel() const {
        const Context* ctx = r_.ctx();
        int n = ctx->dim();
        std::map<VarId, Poly> subL, subR;
        for (int mu = 0; mu < n; ++mu) {
            subL[var_id(VarKind::K, mu)] = D_[mu];
            subL[var_id(VarKind::Q, mu)] = Poly::var(ctx, VarKind::W, mu);
        }
        std::map<VarId, Poly> kq_to_qw;
        for (int mu = 0; mu < n; ++mu) {
            kq_to_qw[var_id(VarKind::K, mu)] = Poly::var(ctx, VarKind::Q, mu);
            kq_to_qw[var_id(VarKind::Q, mu)] = Poly::var(ctx, VarKind::W, mu);
        }
        for (int mu = 0; mu < n; ++mu)
            subR[var_id(VarKind::Q, mu)] = D_[mu].substituted(kq_to_qw);
        for (int mu = 0; mu < n; ++mu)
            if (!(D_[mu].substituted(subL) == D_[mu].substituted(subR))) return false;
        return true;
    }

    /// Translation x -> x + v with the symbols v adjoined to the scalars.
    static Poly translate(const Poly& f) {
        const Context* ctx = f.ctx();
        std::map<VarId, Poly> sub;
        for (int mu = 0; mu < ctx->dim(); ++mu)
            sub[var_id(VarKind::X, mu)] =
                Poly::var(ctx, VarKind::X, mu) + Poly::var(ctx, VarKind::V, mu);
        return f.substituted(sub);
    }

    /// T_v(f) * T_v(g) = T_v(f * g) on monomials within the bound.
    bool check_translation_invariance(int degree_bound) const {
        auto monos = x_monomials_up_to(r_.ctx(), degree_bound);
        for (auto& f : monos)
            for (auto& g : monos)
                if (!(star(translate(f), translate(g)) == translate(star(f, g))))
                    return false;
        return true;
    }

private:
    Realization r_;
    HatAlgebra alg_;
    MomentumMap D_;
};

// ---------------------------------------------------------------------------
// Leibniz machinery for xhat (the raise action)
// ---------------------------------------------------------------------------

/// Residual of the xhat Leibniz rule
///   xhat_mu acting on (fhat ghat)
///     - (Z^{-1} on fhat)(xhat_mu on ghat) + a_mu (p^L_al on fhat)(xhat^al on ghat)
/// with p^L_al = -i del^L_al; returned as the T-image (zero iff the rule holds).
inline Poly xhat_leibniz_residual(const HatAlgebra& alg, const DerivedOps& ops, int mu,
                                  const HatOp& fhat, const HatOp& ghat) {
    const Context* ctx = alg.ctx();
    HatOp prod = alg.mul(fhat, ghat);
    HatOp lhs = alg.mul(HatOp::xhat(ctx, mu), prod);  // xhat acts by multiplication
    HatOp zf = alg.act(HatOp::from_dpoly(ops.Zinv), fhat);
    HatOp xg = alg.mul(HatOp::xhat(ctx, mu), ghat);
    HatOp term1 = alg.mul(zf, xg);
    HatOp term2(ctx);
    for (int al = 0; al < ctx->dim(); ++al) {
        HatOp pf = alg.act(HatOp::from_dpoly(ops.pL(al)), fhat);
        HatOp xa = alg.mul(HatOp::xhat(ctx, al), ghat);
        term2 = term2 + alg.mul(pf, xa).scaled(GaussRat(ctx->eta(al)));
    }
    HatOp residual = lhs - term1 + term2.scaled_poly(Poly::var(ctx, VarKind::A, mu));
    return alg.T(residual);
}

/// Residual of the ladder identity
///   xhat_mu xhat_{nu_1 .. nu_k} = Z^{-1} xhat_{nu...} Z xhat_mu
///     + i a_mu sum_s Z^{-1} xhat_{nu_1..nu_s} Z xhat_{nu_{s+1}..nu_k}
/// as the T-image of the difference.
inline Poly ladder_residual_b43(const HatAlgebra& alg, const DerivedOps& ops, int mu,
                                const HatWord& word) {
    const Context* ctx = alg.ctx();
    HatOp Z = HatOp::from_dpoly(ops.Z), Zinv = HatOp::from_dpoly(ops.Zinv);
    HatOp lhs = alg.mul(HatOp::xhat(ctx, mu), HatOp::word(ctx, word));
    HatOp rhs = alg.mul(alg.mul(alg.mul(Zinv, HatOp::word(ctx, word)), Z),
                        HatOp::xhat(ctx, mu));
    HatOp sum(ctx);
    for (size_t s = 0; s < word.size(); ++s) {
        HatWord head(word.begin(), word.begin() + s);
        HatWord tail(word.begin() + s, word.end());
        sum = sum + alg.mul(alg.mul(alg.mul(Zinv, HatOp::word(ctx, head)), Z),
                            HatOp::word(ctx, tail));
    }
    rhs = rhs + sum.scaled_poly(Poly::var(ctx, VarKind::A, mu)).times_i();
    return alg.T(lhs - rhs);
}

/// Residual of the contracted form
///   xhat_mu xhat_{nu...} = Z^{-1} xhat_{nu...} Z xhat_mu
///     - a_mu (p^L_al on xhat_{nu...}) xhat^al
/// (same conventions as the Leibniz rule above).
inline Poly ladder_residual_b46(const HatAlgebra& alg, const DerivedOps& ops, int mu,
                                const HatWord& word) {
    const Context* ctx = alg.ctx();
    HatOp Z = HatOp::from_dpoly(ops.Z), Zinv = HatOp::from_dpoly(ops.Zinv);
    HatOp lhs = alg.mul(HatOp::xhat(ctx, mu), HatOp::word(ctx, word));
    HatOp rhs = alg.mul(alg.mul(alg.mul(Zinv, HatOp::word(ctx, word)), Z),
                        HatOp::xhat(ctx, mu));
    HatOp sum(ctx);
    for (int al = 0; al < ctx->dim(); ++al) {
        HatOp pf = alg.act(HatOp::from_dpoly(ops.pL(al)), HatOp::word(ctx, word));
        sum = sum + alg.mul(pf, HatOp::xhat(ctx, al)).scaled(GaussRat(ctx->eta(al)));
    }
    rhs = rhs - sum.scaled_poly(Poly::var(ctx, VarKind::A, mu));
    return alg.T(lhs - rhs);
}

/// All words over the index set with length in [1, maxlen].
inline std::vector<HatWord> hat_words_up_to(const Context* ctx, int maxlen) {
    std::vector<HatWord> out, cur{HatWord{}};
    for (int l = 1; l <= maxlen; ++l) {
        std::vector<HatWord> next;
        for (auto& w : cur)
            for (int mu = 0; mu < ctx->dim(); ++mu) {
                HatWord nw = w;
                nw.push_back((uint8_t)mu);
                next.push_back(nw);
                out.push_back(nw);
            }
        cur = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// L-R duality
// ---------------------------------------------------------------------------

/// A realization, its dual and the dual generators yhat_mu = x^al phitilde.
struct DualPair {
    Realization primal;
    Realization dual;

    WeylOp yhat(int mu) const { return dual.xhat(mu); }
};

/// Reconstructs the phi matrix whose plane-wave kernel is the given D:
/// phi_{al mu}(i q) = eta_{mu nu} dD_al(k, q)/dk_nu |_{k=0}.
inline std::vector<std::vector<Poly>> phi_from_kernel(const MomentumMap& D) {
    const Context* ctx = D.ctx();
    int n = ctx->dim();
    std::map<VarId, Poly> kzero, q_to_mid;
    for (int mu = 0; mu < n; ++mu) kzero[var_id(VarKind::K, mu)] = Poly::zero(ctx);
    for (int mu = 0; mu < n; ++mu)
        q_to_mid[var_id(VarKind::Q, mu)] = Poly::var(ctx, VarKind::D, mu).scaled(-GaussRat::i());
    std::vector<std::vector<Poly>> phi(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int al = 0; al < n; ++al)
        for (int mu = 0; mu < n; ++mu) {
            Poly e = D[al].derivative(VarKind::K, mu).substituted(kzero);
            e = e.scaled(GaussRat(ctx->eta(mu)));
            phi[al][mu] = e.substituted(q_to_mid);
        }
    return phi;
}

/// The dual realization: the one whose kernel is the flipped coproduct,
/// Dtilde(k, q) = D(q, k).
inline DualPair dual_realization(const Realization& r) {
    const Context* ctx = r.ctx();
    int n = ctx->dim();
    MomentumMap D = D_map(r);
    std::map<VarId, Poly> flip;
    for (int mu = 0; mu < n; ++mu) {
        flip[var_id(VarKind::K, mu)] = Poly::var(ctx, VarKind::Q, mu);
        flip[var_id(VarKind::Q, mu)] = Poly::var(ctx, VarKind::K, mu);
    }
    MomentumMap Dt(ctx, 2);
    for (int mu = 0; mu < n; ++mu) Dt[mu] = D[mu].substituted(flip);
    Realization dual(ctx, RealizationKind::Explicit, r.name() + "-dual", phi_from_kernel(Dt));
    return DualPair{r, dual};
}

}  // namespace kappa
