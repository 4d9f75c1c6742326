#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kappa/series.hpp"
#include "kappa/weyl.hpp"

namespace kappa {

/// A = i(a d) and B = a^2 d^2 as derivative-symbol polynomials.
inline Poly A_op(const Context* ctx) { return dot(ctx, VarKind::A, VarKind::D).times_i(); }
inline Poly B_op(const Context* ctx) { return square(ctx, VarKind::A) * square(ctx, VarKind::D); }

enum class RealizationKind { Linear, TypeI, TypeII, VectorLike, Explicit };

/// A polarized realization xhat_mu = x^alpha phi_{alpha mu}(d) of the
/// kappa-Minkowski relations, stored through its phi matrix together with the
/// generating data of the builder that produced it.
class Realization {
public:
    Realization() : ctx_(nullptr), kind_(RealizationKind::Explicit) {}

    Realization(const Context* ctx, RealizationKind kind, std::string name,
                std::vector<std::vector<Poly>> phi)
        : ctx_(ctx), kind_(kind), name_(std::move(name)), phi_(std::move(phi)) {
        int n = ctx->dim();
        if ((int)phi_.size() != n)
            throw std::invalid_argument("Realization: phi must be an n x n matrix");
        for (auto& row : phi_) {
            if ((int)row.size() != n)
                throw std::invalid_argument("Realization: phi must be an n x n matrix");
            for (auto& e : row)
                if (e.contains_kind(VarKind::X))
                    throw std::invalid_argument("Realization: phi may not contain x symbols");
        }
        // limit conditions: phi -> eta as a -> 0
        for (int al = 0; al < n; ++al)
            for (int mu = 0; mu < n; ++mu) {
                Poly expect = al == mu ? Poly::constant(ctx, GaussRat(ctx->eta(mu)))
                                       : Poly::zero(ctx);
                if (phi_[al][mu].adeg_part(0) != expect)
                    throw std::invalid_argument(
                        "Realization: phi does not reduce to the metric at a = 0");
            }
    }

    const Context* ctx() const { return ctx_; }
    RealizationKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<std::vector<Poly>>& phi() const { return phi_; }
    const Poly& phi(int alpha, int mu) const { return phi_.at(alpha).at(mu); }

    /// Equality is phi-matrix coefficient equality, never name comparison.
    bool operator==(const Realization& o) const { return phi_ == o.phi_; }
    bool operator!=(const Realization& o) const { return !(*this == o); }

    /// xhat_mu = x^alpha phi_{alpha mu} as a normal-ordered operator.
    WeylOp xhat(int mu) const {
        WeylOp w(ctx_);
        for (int al = 0; al < ctx_->dim(); ++al) {
            Poly xup = Poly::var(ctx_, VarKind::X, al).scaled(GaussRat(ctx_->eta(al)));
            w += WeylOp::from_dpoly(phi_[al][mu]).scaled_poly(xup);
        }
        return w;
    }

    /// Residual of the defining relation [xhat_mu, xhat_nu] - i(a_mu xhat_nu
    /// - a_nu xhat_mu); exactly zero for a consistent realization.
    WeylOp kappa_residual(int mu, int nu) const {
        WeylOp xm = xhat(mu), xn = xhat(nu);
        Poly amu = Poly::var(ctx_, VarKind::A, mu), anu = Poly::var(ctx_, VarKind::A, nu);
        return xm.commutator(xn) -
               (xn.scaled_poly(amu) - xm.scaled_poly(anu)).times_i();
    }

    bool check_kappa_relations() const {
        for (int mu = 0; mu < ctx_->dim(); ++mu)
            for (int nu = mu + 1; nu < ctx_->dim(); ++nu)
                if (!kappa_residual(mu, nu).is_zero()) return false;
        return true;
    }

    // generating data, when the realization came from a builder
    std::optional<ScalarSeries2> phi_series;        // type I / II
    std::optional<ScalarSeries2> f_series;          // vector-like f(B)
    std::optional<std::array<GaussRat, 3>> linear;  // (alpha, beta, gamma)

private:
    const Context* ctx_;
    RealizationKind kind_;
    std::string name_;
    std::vector<std::vector<Poly>> phi_;  // phi_[alpha][mu]
};

namespace detail {

inline std::vector<std::vector<Poly>> eta_matrix(const Context* ctx) {
    int n = ctx->dim();
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int mu = 0; mu < n; ++mu) m[mu][mu] = Poly::constant(ctx, GaussRat(ctx->eta(mu)));
    return m;
}

/// Common denominator of d22/d25/d36: phi - (A phi_A + 2B phi_B).
inline ScalarSeries2 covariant_denominator(const ScalarSeries2& phi) {
    return phi - (phi.partial_A().mul_A() + phi.partial_B().mul_B().scaled(GaussRat(2)));
}

}  // namespace detail

/// gamma_1 of the covariant families.
inline ScalarSeries2 gamma1_of(const ScalarSeries2& phi) {
    const Context* ctx = phi.ctx();
    ScalarSeries2 num = (ScalarSeries2::one(ctx) + phi.partial_A()) * phi;
    return num * detail::covariant_denominator(phi).reciprocal();
}

/// gamma_2 of type I realizations.
inline ScalarSeries2 gamma2_typeI(const ScalarSeries2& phi) {
    ScalarSeries2 num = phi.partial_B() * phi;
    return (-num.scaled(GaussRat(2))) * detail::covariant_denominator(phi).reciprocal();
}

/// gamma_2 of type II realizations.
inline ScalarSeries2 gamma2_typeII(const ScalarSeries2& phi) {
    const Context* ctx = phi.ctx();
    ScalarSeries2 phiA = phi + ScalarSeries2::A(ctx);
    ScalarSeries2 num = phi.partial_A() - (phiA * phi.partial_B()).scaled(GaussRat(2));
    return num * detail::covariant_denominator(phi).reciprocal();
}

/// Type I covariant realization: xhat_mu = x_mu phi + i(x d)(a_mu gamma_1 +
/// i a^2 d_mu gamma_2).
inline Realization build_typeI(const Context* ctx, const ScalarSeries2& phi,
                               const std::string& name = "type1") {
    if (phi.at(0, 0) != GaussRat::one())
        throw std::invalid_argument("build_typeI: phi(0,0) must be 1");
    int n = ctx->dim();
    Poly Av = A_op(ctx), Bv = B_op(ctx);
    Poly phi_v = phi.eval(Av, Bv);
    Poly g1_v = gamma1_of(phi).eval(Av, Bv);
    Poly g2_v = gamma2_typeI(phi).eval(Av, Bv);
    Poly a2 = square(ctx, VarKind::A);
    auto m = detail::eta_matrix(ctx);
    for (int al = 0; al < n; ++al)
        for (int mu = 0; mu < n; ++mu) {
            Poly e(ctx);
            if (al == mu) e += phi_v.scaled(GaussRat(ctx->eta(mu)));
            else e = Poly::zero(ctx);
            e += Poly::var(ctx, VarKind::A, mu) * Poly::var(ctx, VarKind::D, al) * g1_v.times_i();
            e -= a2 * Poly::var(ctx, VarKind::D, al) * Poly::var(ctx, VarKind::D, mu) * g2_v;
            m[al][mu] = e;
        }
    Realization r(ctx, RealizationKind::TypeI, name, m);
    r.phi_series = phi;
    return r;
}

/// Type II covariant realization: type I plus the i(ax) d_mu term.
inline Realization build_typeII(const Context* ctx, const ScalarSeries2& phi,
                                const std::string& name = "type2") {
    if (phi.at(0, 0) != GaussRat::one())
        throw std::invalid_argument("build_typeII: phi(0,0) must be 1");
    int n = ctx->dim();
    Poly Av = A_op(ctx), Bv = B_op(ctx);
    Poly phi_v = phi.eval(Av, Bv);
    Poly g1_v = gamma1_of(phi).eval(Av, Bv);
    Poly g2_v = gamma2_typeII(phi).eval(Av, Bv);
    Poly a2 = square(ctx, VarKind::A);
    auto m = detail::eta_matrix(ctx);
    for (int al = 0; al < n; ++al)
        for (int mu = 0; mu < n; ++mu) {
            Poly e(ctx);
            if (al == mu) e += phi_v.scaled(GaussRat(ctx->eta(mu)));
            e += Poly::var(ctx, VarKind::A, al) * Poly::var(ctx, VarKind::D, mu).times_i();
            e += Poly::var(ctx, VarKind::A, mu) * Poly::var(ctx, VarKind::D, al) * g1_v.times_i();
            e -= a2 * Poly::var(ctx, VarKind::D, al) * Poly::var(ctx, VarKind::D, mu) * g2_v;
            m[al][mu] = e;
        }
    Realization r(ctx, RealizationKind::TypeII, name, m);
    r.phi_series = phi;
    return r;
}

/// Vector-like realization from a real function f(B) with f(0) = 1:
/// xhat_mu = x_mu(-A + f(B)) + i(ax) d_mu - a^2 (x d) d_mu gamma_2(B).
inline Realization build_vector_like(const Context* ctx, const ScalarSeries2& f,
                                     const std::string& name = "vector_like") {
    if (f.depends_on_A())
        throw std::invalid_argument("build_vector_like: f must be a function of B alone");
    if (f.at(0, 0) != GaussRat::one())
        throw std::invalid_argument("build_vector_like: f(0) must be 1");
    const ScalarSeries2 fB = f.partial_B();
    ScalarSeries2 denom = f - fB.mul_B().scaled(GaussRat(2));  // f - 2B df/dB
    if (denom.at(0, 0).is_zero())
        throw std::invalid_argument("build_vector_like: gamma_2 denominator vanishes at B = 0");
    ScalarSeries2 num = ScalarSeries2::one(f.ctx()) + (f * fB).scaled(GaussRat(2));
    ScalarSeries2 gamma2 = (-num) * denom.reciprocal();

    int n = ctx->dim();
    Poly Av = A_op(ctx), Bv = B_op(ctx);
    Poly scal = f.eval(Av, Bv) - Av;  // -A + f(B)
    Poly g2_v = gamma2.eval(Av, Bv);
    Poly a2 = square(ctx, VarKind::A);
    auto m = detail::eta_matrix(ctx);
    for (int al = 0; al < n; ++al)
        for (int mu = 0; mu < n; ++mu) {
            Poly e(ctx);
            if (al == mu) e += scal.scaled(GaussRat(ctx->eta(mu)));
            e += Poly::var(ctx, VarKind::A, al) * Poly::var(ctx, VarKind::D, mu).times_i();
            e -= a2 * Poly::var(ctx, VarKind::D, al) * Poly::var(ctx, VarKind::D, mu) * g2_v;
            m[al][mu] = e;
        }
    Realization r(ctx, RealizationKind::VectorLike, name, m);
    r.f_series = f;
    return r;
}

/// The most general linear realization xhat_mu = x_mu + i(alpha x_mu (a d) +
/// beta (ax) d_mu + gamma a_mu (x d)); consistent at first order in a iff
/// gamma - alpha = 1.
inline Realization build_linear(const Context* ctx, const GaussRat& alpha,
                                const GaussRat& beta, const GaussRat& gamma,
                                const std::string& name = "linear") {
    if (gamma - alpha != GaussRat::one())
        throw std::invalid_argument("build_linear: gamma - alpha must equal 1");
    int n = ctx->dim();
    Poly Av = A_op(ctx);
    auto m = detail::eta_matrix(ctx);
    for (int al = 0; al < n; ++al)
        for (int mu = 0; mu < n; ++mu) {
            Poly e(ctx);
            if (al == mu)
                e += (Poly::one(ctx) + Av.scaled(alpha)).scaled(GaussRat(ctx->eta(mu)));
            e += Poly::var(ctx, VarKind::A, al) * Poly::var(ctx, VarKind::D, mu)
                     .scaled(beta * GaussRat::i());
            e += Poly::var(ctx, VarKind::A, mu) * Poly::var(ctx, VarKind::D, al)
                     .scaled(gamma * GaussRat::i());
            m[al][mu] = e;
        }
    Realization r(ctx, RealizationKind::Linear, name, m);
    r.linear = std::array<GaussRat, 3>{alpha, beta, gamma};
    return r;
}

// ---------------------------------------------------------------------------
// derived operators
// ---------------------------------------------------------------------------

/// The natural-basis shift operator as a function of a derivative vector:
/// Z_N^{-1}(D) = -i(aD) + sqrt(1 - a^2 D^2).
inline Poly natural_zinv_of(const Context* ctx, const std::vector<Poly>& D) {
    Poly aD = Poly::zero(ctx), D2 = Poly::zero(ctx);
    for (int mu = 0; mu < ctx->dim(); ++mu) {
        aD += Poly::var(ctx, VarKind::A, mu) * D[mu].scaled(GaussRat(ctx->eta(mu)));
        D2 += D[mu] * D[mu].scaled(GaussRat(ctx->eta(mu)));
    }
    ScalarSeries2 root = (ScalarSeries2::one(ctx) - ScalarSeries2::B(ctx)).sqrt();
    return root.eval(Poly::zero(ctx), square(ctx, VarKind::A) * D2) - aD.times_i();
}

/// Operators attached to a realization. Z and box are defined by their
/// commutator equations and solved order by order in a; the Dirac derivative
/// solves [D_mu, xhat_nu] = eta_{mu nu} Z_N^{-1}(D) + i a_mu D_nu.
///
/// The Casimir satisfies [box, xhat_mu] = 2 i P_mu with P_mu = -i D_mu the
/// natural-basis momentum (P = p only when D = d); this is the reading under
/// which D = del^L + (i a/2) box and [del^L_alpha, xhat_mu] = eta Z^{-1} hold
/// in every realization, covariant or not.
struct DerivedOps {
    Poly Z, Zinv, box;
    std::vector<Poly> dirac;      // D_mu, derivative-symbol series
    std::vector<Poly> partialL;   // del^L_mu = D_mu - (i a_mu / 2) box
    std::vector<WeylOp> bigX;     // X_mu = x^alpha psi_{alpha mu}
    std::vector<std::vector<Poly>> psi;
    std::vector<std::vector<WeylOp>> lorentz;  // M_{mu nu}

    Poly pL(int alpha) const { return partialL.at(alpha).scaled(-GaussRat::i()); }
};

/// Inverse of an n x n matrix of the form I + O(a) by the terminating
/// Neumann series.
inline std::vector<std::vector<Poly>> neumann_inverse(const Context* ctx,
                                                      const std::vector<std::vector<Poly>>& J) {
    int n = ctx->dim();
    for (int mu = 0; mu < n; ++mu)
        for (int al = 0; al < n; ++al) {
            Poly expect = mu == al ? Poly::one(ctx) : Poly::zero(ctx);
            if (J[mu][al].adeg_part(0) != expect)
                throw std::invalid_argument("neumann_inverse: matrix is not I + O(a)");
        }
    std::vector<std::vector<Poly>> dJ = J, inv(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int mu = 0; mu < n; ++mu) dJ[mu][mu] -= Poly::one(ctx);
    std::vector<std::vector<Poly>> pw(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int mu = 0; mu < n; ++mu) pw[mu][mu] = Poly::one(ctx);
    for (int j = 0; j <= ctx->order(); ++j) {
        bool all_zero = true;
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) {
                inv[mu][nu] += pw[mu][nu];
                if (!pw[mu][nu].is_zero()) all_zero = false;
            }
        if (all_zero) break;
        std::vector<std::vector<Poly>> nx(n, std::vector<Poly>(n, Poly::zero(ctx)));
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) {
                Poly acc = Poly::zero(ctx);
                for (int la = 0; la < n; ++la) acc += pw[mu][la] * dJ[la][nu];
                nx[mu][nu] = -acc;
            }
        pw = std::move(nx);
    }
    return inv;
}

namespace detail {

/// Reconstructs a polynomial from its derivative-symbol gradient via the
/// Euler identity, with vanishing d-free part.
inline Poly euler_integrate(const Context* ctx, const std::vector<Poly>& grad) {
    Poly acc = Poly::zero(ctx);
    for (int al = 0; al < ctx->dim(); ++al) acc += Poly::var(ctx, VarKind::D, al) * grad[al];
    Poly out = Poly::zero(ctx);
    for (int d = 1; d <= acc.degree_in(VarKind::D); ++d) {
        Poly part = acc.part_of_degree({VarKind::D}, d);
        out += part.scaled(GaussRat::one() / GaussRat(d));
    }
    return out;
}

/// Solves sum_alpha (dF/dd_alpha) phi_{alpha nu} = rhs(F) order by order in
/// the a-grading, where rhs_of_order(m, F_so_far) returns the a-degree-m part
/// of the right-hand side (which may depend on lower orders of F only).
template <typename RhsFn>
Poly solve_gradient_equation(const Realization& r, const Poly& order0, RhsFn&& rhs_of_order) {
    const Context* ctx = r.ctx();
    int n = ctx->dim();
    Poly F = order0;
    for (int m = 1; m <= ctx->order(); ++m) {
        // known contributions of lower orders through the deformed phi
        std::vector<Poly> R(n, Poly::zero(ctx));
        for (int nu = 0; nu < n; ++nu) {
            R[nu] = rhs_of_order(m, F, nu);
            for (int j = 1; j <= m; ++j)
                for (int al = 0; al < n; ++al)
                    R[nu] -= (F.adeg_part(m - j).derivative(VarKind::D, al) *
                              r.phi(al, nu).adeg_part(j));
        }
        std::vector<Poly> grad(n, Poly::zero(ctx));
        for (int al = 0; al < n; ++al) grad[al] = R[al].scaled(GaussRat(ctx->eta(al)));
        F += euler_integrate(ctx, grad);
    }
    return F;
}

inline void verify_commutator(const Realization& r, const Poly& F, const WeylOp& rhs_nu,
                              int nu, const char* what) {
    WeylOp lhs = WeylOp::from_dpoly(F).commutator(r.xhat(nu));
    if (!(lhs == rhs_nu))
        throw std::logic_error(std::string("derive_ops: inconsistent defining equation for ") +
                               what);
}

}  // namespace detail

inline DerivedOps derive_ops(const Realization& r) {
    const Context* ctx = r.ctx();
    int n = ctx->dim();
    DerivedOps ops;

    // Z from [Z, xhat_nu] = i a_nu Z, Z|_{a=0} = 1
    ops.Z = detail::solve_gradient_equation(
        r, Poly::one(ctx), [&](int m, const Poly& F, int nu) {
            return (Poly::var(ctx, VarKind::A, nu) * F.adeg_part(m - 1)).times_i();
        });
    for (int nu = 0; nu < n; ++nu)
        detail::verify_commutator(
            r, ops.Z, WeylOp::from_dpoly((Poly::var(ctx, VarKind::A, nu) * ops.Z).times_i()),
            nu, "Z");
    ops.Zinv = ops.Z.reciprocal();

    // Dirac derivative, one component at a time
    ops.dirac.assign(n, Poly::zero(ctx));
    for (int mu = 0; mu < n; ++mu) ops.dirac[mu] = Poly::var(ctx, VarKind::D, mu);
    for (int m = 1; m <= ctx->order(); ++m) {
        std::vector<Poly> next = ops.dirac;
        Poly zinv_of_D = natural_zinv_of(ctx, ops.dirac);
        for (int mu = 0; mu < n; ++mu) {
            // order-m part of Phi_{mu nu}(D) using lower orders of D
            std::vector<Poly> R(n, Poly::zero(ctx));
            for (int nu = 0; nu < n; ++nu) {
                Poly phi_rhs = (mu == nu)
                                   ? zinv_of_D.scaled(GaussRat(ctx->eta(mu)))
                                   : Poly::zero(ctx);
                phi_rhs += (Poly::var(ctx, VarKind::A, mu) * ops.dirac[nu]).times_i();
                R[nu] = phi_rhs.adeg_part(m);
                for (int j = 1; j <= m; ++j)
                    for (int al = 0; al < n; ++al)
                        R[nu] -= ops.dirac[mu].adeg_part(m - j).derivative(VarKind::D, al) *
                                 r.phi(al, nu).adeg_part(j);
            }
            std::vector<Poly> grad(n, Poly::zero(ctx));
            for (int al = 0; al < n; ++al) grad[al] = R[al].scaled(GaussRat(ctx->eta(al)));
            next[mu] += detail::euler_integrate(ctx, grad);
        }
        ops.dirac = next;
    }
    {
        Poly zinv_of_D = natural_zinv_of(ctx, ops.dirac);
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) {
                Poly phi_rhs = (mu == nu) ? zinv_of_D.scaled(GaussRat(ctx->eta(mu)))
                                          : Poly::zero(ctx);
                phi_rhs += (Poly::var(ctx, VarKind::A, mu) * ops.dirac[nu]).times_i();
                WeylOp lhs = WeylOp::from_dpoly(ops.dirac[mu]).commutator(r.xhat(nu));
                if (!(lhs == WeylOp::from_dpoly(phi_rhs)))
                    throw std::logic_error(
                        "derive_ops: inconsistent defining equation for the Dirac derivative");
            }
    }

    // box from [box, xhat_nu] = 2 i P_nu = 2 D_nu, box|_{a=0} = d^2
    ops.box = detail::solve_gradient_equation(
        r, square(ctx, VarKind::D), [&](int m, const Poly&, int nu) {
            return ops.dirac[nu].adeg_part(m).scaled(GaussRat(2));
        });
    for (int nu = 0; nu < n; ++nu)
        detail::verify_commutator(r, ops.box,
                                  WeylOp::from_dpoly(ops.dirac[nu].scaled(GaussRat(2))), nu,
                                  "box");

    // del^L_mu = D_mu - (i a_mu / 2) box
    ops.partialL.assign(n, Poly::zero(ctx));
    for (int mu = 0; mu < n; ++mu)
        ops.partialL[mu] =
            ops.dirac[mu] -
            (Poly::var(ctx, VarKind::A, mu) * ops.box).scaled(GaussRat(1, 2)).times_i();

    // psi = (dD/dd)^{-1} eta, X_mu = x^alpha psi_{alpha mu}
    std::vector<std::vector<Poly>> J(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int mu = 0; mu < n; ++mu)
        for (int al = 0; al < n; ++al) J[mu][al] = ops.dirac[mu].derivative(VarKind::D, al);
    auto inv = neumann_inverse(ctx, J);
    ops.psi.assign(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int al = 0; al < n; ++al)
        for (int mu = 0; mu < n; ++mu)
            ops.psi[al][mu] = inv[al][mu].scaled(GaussRat(ctx->eta(mu)));
    ops.bigX.assign(n, WeylOp(ctx));
    for (int mu = 0; mu < n; ++mu) {
        WeylOp w(ctx);
        for (int al = 0; al < n; ++al) {
            Poly xup = Poly::var(ctx, VarKind::X, al).scaled(GaussRat(ctx->eta(al)));
            w += WeylOp::from_dpoly(ops.psi[al][mu]).scaled_poly(xup);
        }
        ops.bigX[mu] = w;
    }

    // M_{mu nu} = (xhat_mu D_nu - xhat_nu D_mu) Z
    ops.lorentz.assign(n, std::vector<WeylOp>(n, WeylOp(ctx)));
    WeylOp Zw = WeylOp::from_dpoly(ops.Z);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            if (mu == nu) continue;
            if (mu < nu) {
                WeylOp m = (r.xhat(mu) * WeylOp::from_dpoly(ops.dirac[nu]) -
                            r.xhat(nu) * WeylOp::from_dpoly(ops.dirac[mu])) *
                           Zw;
                ops.lorentz[mu][nu] = m;
            } else {
                ops.lorentz[mu][nu] = -ops.lorentz[nu][mu];
            }
        }

    return ops;
}

/// g_{mu nu lambda} = [M_{mu nu}, p_lambda] as a one-slot momentum map; the
/// commutator must be free of x (this is checked).
inline std::vector<std::vector<std::vector<Poly>>> g_tensor(const Realization& r,
                                                            const DerivedOps& ops) {
    const Context* ctx = r.ctx();
    int n = ctx->dim();
    std::vector<std::vector<std::vector<Poly>>> g(
        n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, Poly::zero(ctx))));
    auto sub = d_to_ik(ctx);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
            if (mu == nu) continue;
            for (int la = 0; la < n; ++la) {
                WeylOp p = WeylOp::momentum(ctx, la);
                WeylOp c = ops.lorentz[mu][nu].commutator(p);
                if (!c.x_free())
                    throw std::logic_error("g_tensor: residual x-dependence in [M, p]");
                g[mu][nu][la] = c.as_dpoly().substituted(sub);
            }
        }
    return g;
}

/// Builds the realization whose Dirac-derivative commutator [D_mu, xhat_nu]
/// equals Phi_{mu nu}(D): phi = (dD/dd)^{-1} Phi(D). D_spec is a one-slot
/// momentum map with D = id + O(a); Phi is a matrix of scalar momentum
/// polynomials with Phi|_{a=0} = eta.
inline Realization from_D_and_Phi(const Context* ctx, const MomentumMap& D_spec,
                                  const std::vector<std::vector<Poly>>& Phi,
                                  const std::string& name = "constructed") {
    int n = ctx->dim();
    if (D_spec.slot_count() != 1)
        throw std::invalid_argument("from_D_and_Phi: D must be a one-slot map");
    std::vector<Poly> D = ops_of_momentum(D_spec);
    std::vector<std::vector<Poly>> J(n, std::vector<Poly>(n, Poly::zero(ctx)));
    for (int mu = 0; mu < n; ++mu)
        for (int al = 0; al < n; ++al) J[mu][al] = D[mu].derivative(VarKind::D, al);
    std::vector<std::vector<Poly>> inv;
    try {
        inv = neumann_inverse(ctx, J);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("from_D_and_Phi: dD/dd singular at a = 0");
    }
    // Phi_{mu nu}(D): substitute k -> -i D (the momentum of the operator D)
    std::map<VarId, Poly> sub;
    for (int la = 0; la < n; ++la) sub[var_id(VarKind::K, la)] = D[la].scaled(-GaussRat::i());
    auto m = detail::eta_matrix(ctx);
    for (int al = 0; al < n; ++al)
        for (int nu = 0; nu < n; ++nu) {
            Poly acc = Poly::zero(ctx);
            for (int mu = 0; mu < n; ++mu)
                acc += inv[al][mu] * Phi.at(mu).at(nu).substituted(sub);
            m[al][nu] = acc;
        }
    return Realization(ctx, RealizationKind::Explicit, name, m);
}

/// Similarity transformation by E = exp(x^alpha Sigma_alpha(d)) with
/// Sigma = O(a): the adjoint series terminates under the a-grading and the
/// result stays x-linear, i.e. polarized.
inline Realization conjugate_by_exponential(const Realization& r,
                                            const std::vector<Poly>& Sigma,
                                            const std::string& name = "conjugated") {
    const Context* ctx = r.ctx();
    int n = ctx->dim();
    WeylOp S(ctx);
    for (int al = 0; al < n; ++al) {
        if (Sigma.at(al).contains_kind(VarKind::X))
            throw std::invalid_argument("conjugate_by_exponential: Sigma must be d-only");
        if (!Sigma[al].adeg_part(0).is_zero())
            throw std::invalid_argument("conjugate_by_exponential: Sigma must vanish at a = 0");
        Poly xup = Poly::var(ctx, VarKind::X, al).scaled(GaussRat(ctx->eta(al)));
        S += WeylOp::from_dpoly(Sigma[al]).scaled_poly(xup);
    }
    auto m = detail::eta_matrix(ctx);
    for (int mu = 0; mu < n; ++mu) {
        WeylOp acc = r.xhat(mu), cur = r.xhat(mu);
        for (int j = 1; j <= ctx->order() + 1; ++j) {
            cur = S.commutator(cur).scaled(GaussRat::one() / GaussRat(j));
            if (cur.is_zero()) break;
            if (j == ctx->order() + 1)
                throw std::logic_error("conjugate_by_exponential: adjoint series did not close");
            acc += cur;
        }
        if (!acc.x_linear())
            throw std::logic_error("conjugate_by_exponential: result is not polarized");
        // read off phi'_{alpha mu} as the (metric-weighted) x_alpha coefficient
        for (int al = 0; al < n; ++al) {
            Poly col = Poly::zero(ctx);
            for (auto& [beta, f] : acc.terms()) {
                Poly cf = f.coefficient_of({VarKind::X}, Mono::var(VarKind::X, al));
                if (!cf.is_zero()) col += cf * Poly::mono(ctx, beta, GaussRat::one());
            }
            m[al][mu] = col.scaled(GaussRat(ctx->eta(al)));
        }
    }
    return Realization(ctx, RealizationKind::Explicit, name, m);
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

/// The five named realizations used throughout the test suites.
inline Realization catalog_realization(const Context* ctx, const std::string& name) {
    if (name == "left")
        return build_typeI(ctx, ScalarSeries2::one(ctx) - ScalarSeries2::A(ctx), "left");
    if (name == "right") return build_typeI(ctx, ScalarSeries2::one(ctx), "right");
    if (name == "symmetric")
        return build_typeI(ctx, ScalarSeries2::expm1_over_A(ctx).reciprocal(), "symmetric");
    if (name == "natural")
        return build_vector_like(
            ctx, (ScalarSeries2::one(ctx) - ScalarSeries2::B(ctx)).sqrt(), "natural");
    if (name == "magueijo-smolin" || name == "ms")
        return build_typeII(ctx, ScalarSeries2::one(ctx), "magueijo-smolin");
    throw std::invalid_argument("unknown realization '" + name + "'");
}

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"left", "right", "symmetric", "natural",
                                                   "magueijo-smolin"};
    return names;
}

}  // namespace kappa
