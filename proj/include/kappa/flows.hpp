#pragma once

#include <vector>

#include "kappa/momentum.hpp"
#include "kappa/realization.hpp"

namespace kappa {

/// h_{alpha mu} evaluated on a momentum vector: phi with d_lambda -> i v_lambda.
inline Poly h_entry_at(const Realization& r, int alpha, int mu, const std::vector<Poly>& v) {
    const Context* ctx = r.ctx();
    std::map<VarId, Poly> sub;
    for (int la = 0; la < ctx->dim(); ++la)
        sub[var_id(VarKind::D, la)] = v[la].times_i();
    return r.phi(alpha, mu).substituted(sub);
}

/// h_{alpha mu}(k) as a matrix of momentum polynomials.
inline std::vector<std::vector<Poly>> h_of_momentum(const Realization& r,
                                                    VarKind mom = VarKind::K) {
    const Context* ctx = r.ctx();
    int n = ctx->dim();
    std::vector<Poly> kv = MomentumMap::slot_vars(ctx, mom);
    std::vector<std::vector<Poly>> h(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int al = 0; al < n; ++al)
        for (int mu = 0; mu < n; ++mu) h[al][mu] = h_entry_at(r, al, mu, kv);
    return h;
}

/// Result of the characteristic flow, with the Picard iterates kept for
/// diagnostics.
struct FlowResult {
    MomentumMap P;                      // P(k, q), two slots
    std::vector<MomentumMap> iterates;  // P at t = 1 after each Picard pass
};

namespace detail {

inline Poly integrate_time(const Poly& p) {
    const Context* ctx = p.ctx();
    Poly r(ctx);
    VarId tv = var_id(VarKind::Time, 0);
    for (auto& [m, c] : p.terms()) {
        int j = m.exp_of(tv);
        Mono up = m * Mono::var(VarKind::Time, 0);
        r += Poly::mono(ctx, up, c / GaussRat(j + 1));
    }
    return r;
}

}  // namespace detail

/// Solves dP_alpha/dt = k^mu h_{alpha mu}(P(t)), P(0) = q by Picard
/// iteration; each pass fixes one more a-order, so the loop always
/// terminates under the truncation. P = P(t=1).
inline FlowResult flow_P(const Realization& r) {
    const Context* ctx = r.ctx();
    int n = ctx->dim();
    FlowResult out;
    std::map<VarId, Poly> t_one{{var_id(VarKind::Time, 0), Poly::one(ctx)}};

    std::vector<Poly> P(n, Poly::zero(ctx));
    Poly t = Poly::var(ctx, VarKind::Time, 0);
    for (int al = 0; al < n; ++al)
        P[al] = Poly::var(ctx, VarKind::Q, al) + Poly::var(ctx, VarKind::K, al) * t;

    auto snapshot = [&](const std::vector<Poly>& cur) {
        MomentumMap m(ctx, 2);
        for (int al = 0; al < n; ++al) m[al] = cur[al].substituted(t_one);
        return m;
    };

    std::vector<Poly> prev;
    for (int pass = 0; pass <= ctx->order() + 1; ++pass) {
        std::vector<Poly> next(n, Poly::zero(ctx));
        for (int al = 0; al < n; ++al) {
            Poly rhs(ctx);
            for (int mu = 0; mu < n; ++mu) {
                Poly kup = Poly::var(ctx, VarKind::K, mu).scaled(GaussRat(ctx->eta(mu)));
                rhs += kup * h_entry_at(r, al, mu, P);
            }
            next[al] = Poly::var(ctx, VarKind::Q, al) + detail::integrate_time(rhs);
        }
        out.iterates.push_back(snapshot(next));
        if (next == P) break;
        prev = P;
        P = next;
        if (pass == ctx->order() + 1 && !(prev == P))
            throw std::logic_error("flow_P: Picard iteration did not reach a fixed point");
    }

    out.P = snapshot(P);
    if (!out.P.homogeneous())
        throw std::logic_error("flow_P: homogeneity grading violated");
    return out;
}

/// K(k) = P(k, 0): the ordering kernel of the realization.
inline MomentumMap K_map(const Realization& r) {
    FlowResult f = flow_P(r);
    MomentumMap K = momentum_substitute(f.P, 2, nullptr);
    MomentumMap one_slot(r.ctx(), 1);
    for (int mu = 0; mu < r.ctx()->dim(); ++mu) one_slot[mu] = K[mu];
    return one_slot;
}

inline MomentumMap K_inverse(const MomentumMap& K) { return momentum_invert(K); }

/// D(k, q) = P(K^{-1}(k), q): the momentum addition law (star-product
/// exponent, coproduct in momentum coordinates).
inline MomentumMap D_map(const Realization& r) {
    FlowResult f = flow_P(r);
    MomentumMap K = momentum_substitute(f.P, 2, nullptr);
    MomentumMap K1(r.ctx(), 1);
    for (int mu = 0; mu < r.ctx()->dim(); ++mu) K1[mu] = K[mu];
    MomentumMap Kinv = momentum_invert(K1);
    return momentum_substitute(f.P, 1, &Kinv);
}

/// D computed through the totally symmetric basis, Eq.-level cross-check:
/// D_phi(k,q) = K_phi(D_s(K^{-1}(k), K^{-1}(q))).
inline MomentumMap D_via_symmetric(const Realization& r, const MomentumMap& D_s) {
    const Context* ctx = r.ctx();
    int n = ctx->dim();
    MomentumMap K = K_map(r);
    MomentumMap Kinv = momentum_invert(K);
    // q-language copy of K^{-1}
    std::map<VarId, Poly> k_to_q;
    for (int mu = 0; mu < n; ++mu)
        k_to_q[var_id(VarKind::K, mu)] = Poly::var(ctx, VarKind::Q, mu);
    std::map<VarId, Poly> sub;
    for (int mu = 0; mu < n; ++mu) {
        sub[var_id(VarKind::K, mu)] = Kinv[mu];
        sub[var_id(VarKind::Q, mu)] = Kinv[mu].substituted(k_to_q);
    }
    std::vector<Poly> mid(n, Poly::zero(ctx));
    for (int mu = 0; mu < n; ++mu) mid[mu] = D_s[mu].substituted(sub);
    MomentumMap out(ctx, 2);
    auto vals = K.applied(mid);
    for (int mu = 0; mu < n; ++mu) out[mu] = vals[mu];
    return out;
}

/// S(k) = K(-K^{-1}(k)); D(k, S(k)) = 0 = D(S(k), k) to truncation order.
inline MomentumMap antipode_S(const Realization& r) {
    MomentumMap K = K_map(r);
    MomentumMap Kinv = momentum_invert(K);
    MomentumMap negKinv = -Kinv;
    return compose1(K, negKinv);
}

inline MomentumMap antipode_S_of(const MomentumMap& K) {
    MomentumMap Kinv = momentum_invert(K);
    MomentumMap negKinv = -Kinv;
    return compose1(K, negKinv);
}

/// The unique series q(k) = -k + O(a) with D(k, q(k)) = 0, found by the
/// same one-order-per-pass correction as series reversion.
inline MomentumMap solve_D_zero(const MomentumMap& D) {
    const Context* ctx = D.ctx();
    if (D.slot_count() != 2) throw std::invalid_argument("solve_D_zero: two-slot map expected");
    int n = ctx->dim();
    MomentumMap q = -MomentumMap::identity(ctx);
    for (int pass = 0; pass <= ctx->order() + 1; ++pass) {
        MomentumMap err = momentum_substitute(D, 2, &q);
        bool zero = true;
        for (int mu = 0; mu < n; ++mu)
            if (!err[mu].is_zero()) zero = false;
        if (zero) break;
        for (int mu = 0; mu < n; ++mu) q[mu] -= err[mu];
    }
    MomentumMap check = momentum_substitute(D, 2, &q);
    for (int mu = 0; mu < n; ++mu)
        if (!check[mu].is_zero())
            throw std::logic_error("solve_D_zero: iteration did not converge");
    return q;
}

/// Independent oracle for the symmetric-basis addition law: the solvable
/// algebra is represented faithfully by (n+1) x (n+1) affine matrices
/// rho(xhat_mu) = [[i a_mu I, e_mu], [0, 0]]; exact matrix exponentials and
/// one matrix product give D_s without any series-reversion machinery.
inline MomentumMap symmetric_D_matrix_oracle(const Context* ctx) {
    int n = ctx->dim();

    // exp of X(v) = [[s I, b],[0,0]] with s = -(av), b = i v^up: the powers
    // X^j = [[s^j I, s^{j-1} b],[0,0]] gain one a-order per step
    auto exp_affine = [&](VarKind mom) {
        Poly s = -dot(ctx, VarKind::A, mom);
        std::vector<Poly> b(n, Poly::zero(ctx));
        for (int mu = 0; mu < n; ++mu)
            b[mu] = Poly::var(ctx, mom, mu).scaled(GaussRat(ctx->eta(mu))).times_i();
        Poly scal = Poly::one(ctx);   // e^s
        std::vector<Poly> vec = b;    // b (e^s - 1)/s
        Poly spow = Poly::one(ctx);
        GaussRat fact(1);
        for (int j = 1; j <= ctx->order() + 2; ++j) {
            spow = spow * s;
            fact = fact / GaussRat(j);
            if (spow.is_zero()) break;
            scal += spow.scaled(fact);
            for (int mu = 0; mu < n; ++mu) vec[mu] += (spow * b[mu]).scaled(fact / GaussRat(j + 1));
        }
        return std::make_pair(scal, vec);
    };

    auto [sk, bk] = exp_affine(VarKind::K);
    auto [sq, bq] = exp_affine(VarKind::Q);

    // product [[sk I, bk],[0,1]] [[sq I, bq],[0,1]] = [[sk sq I, sk bq + bk],[0,1]]
    Poly sigma = sk * sq;
    std::vector<Poly> b(n, Poly::zero(ctx));
    for (int mu = 0; mu < n; ++mu) b[mu] = sk * bq[mu] + bk[mu];

    // solve exp X(r) = product: sigma = e^{-(ar)}, b = i r^up E with
    // E = sum_j (log sigma)^j / (j+1)!
    Poly u = sigma - Poly::one(ctx);  // O(a)
    Poly lambda = Poly::zero(ctx), upow = Poly::one(ctx);
    for (int j = 1; j <= ctx->order() + 1; ++j) {
        upow = upow * u;
        if (upow.is_zero()) break;
        lambda += upow.scaled(GaussRat((j % 2) ? 1 : -1) / GaussRat(j));
    }
    Poly E = Poly::one(ctx), lpow = Poly::one(ctx);
    GaussRat fact(1);  // becomes 1/(j+1)!
    for (int j = 1; j <= ctx->order() + 1; ++j) {
        lpow = lpow * lambda;
        fact = fact / GaussRat(j + 1);
        if (lpow.is_zero()) break;
        E += lpow.scaled(fact);
    }
    Poly Einv = E.reciprocal();
    MomentumMap r(ctx, 2);
    for (int mu = 0; mu < n; ++mu)
        r[mu] = (b[mu] * Einv).scaled(-GaussRat::i() * GaussRat(ctx->eta(mu)));
    return r;
}

}  // namespace kappa
