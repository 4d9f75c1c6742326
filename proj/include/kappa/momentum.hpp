#pragma once

#include <stdexcept>
#include <vector>

#include "kappa/poly.hpp"

namespace kappa {

/// Vector-valued formal momentum map: one component polynomial per spacetime
/// index, in the slot-1 symbols k (and slot-2 symbols q when slot_count = 2),
/// with a-graded coefficients.
///
/// Homogeneity invariant: a term of a-degree m has total momentum degree
/// m + 1 in every component.
class MomentumMap {
public:
    MomentumMap() : ctx_(nullptr), slots_(1) {}
    MomentumMap(const Context* ctx, int slots)
        : ctx_(ctx), slots_(slots), comp_(ctx->dim(), Poly::zero(ctx)) {
        if (slots < 1 || slots > 2)
            throw std::invalid_argument("MomentumMap: slot_count must be 1 or 2");
    }

    /// The identity map k -> k.
    static MomentumMap identity(const Context* ctx) {
        MomentumMap m(ctx, 1);
        for (int mu = 0; mu < ctx->dim(); ++mu) m.comp_[mu] = Poly::var(ctx, VarKind::K, mu);
        return m;
    }

    /// The undeformed addition k + q.
    static MomentumMap addition(const Context* ctx) {
        MomentumMap m(ctx, 2);
        for (int mu = 0; mu < ctx->dim(); ++mu)
            m.comp_[mu] = Poly::var(ctx, VarKind::K, mu) + Poly::var(ctx, VarKind::Q, mu);
        return m;
    }

    static MomentumMap zero(const Context* ctx, int slots) { return MomentumMap(ctx, slots); }

    const Context* ctx() const { return ctx_; }
    int slot_count() const { return slots_; }
    int dim() const { return ctx_->dim(); }

    Poly& operator[](int mu) { return comp_.at(mu); }
    const Poly& operator[](int mu) const { return comp_.at(mu); }

    bool operator==(const MomentumMap& o) const {
        return slots_ == o.slots_ && comp_ == o.comp_;
    }
    bool operator!=(const MomentumMap& o) const { return !(*this == o); }

    bool is_zero() const {
        for (auto& c : comp_)
            if (!c.is_zero()) return false;
        return true;
    }

    MomentumMap operator+(const MomentumMap& o) const {
        MomentumMap r = *this;
        for (int mu = 0; mu < dim(); ++mu) r.comp_[mu] += o.comp_[mu];
        return r;
    }
    MomentumMap operator-(const MomentumMap& o) const {
        MomentumMap r = *this;
        for (int mu = 0; mu < dim(); ++mu) r.comp_[mu] -= o.comp_[mu];
        return r;
    }
    MomentumMap operator-() const {
        MomentumMap r = *this;
        for (auto& c : r.comp_) c = -c;
        return r;
    }

    /// True if every term satisfies the grading "a-degree m => momentum
    /// degree m+1" (momentum = k, q and w symbols jointly).
    bool homogeneous() const {
        for (auto& c : comp_)
            for (auto& [m, g] : c.terms()) {
                int pdeg = m.degree_in(VarKind::K) + m.degree_in(VarKind::Q) +
                           m.degree_in(VarKind::W);
                if (pdeg != m.adeg + 1) return false;
            }
        return true;
    }

    /// Component vector of this map with its slot symbols replaced by given
    /// polynomial values (slot 1 components first, then slot 2).
    std::vector<Poly> applied(const std::vector<Poly>& slot1,
                              const std::vector<Poly>& slot2 = {}) const {
        std::map<VarId, Poly> sub;
        for (int mu = 0; mu < dim(); ++mu) sub[var_id(VarKind::K, mu)] = slot1.at(mu);
        if (slots_ == 2) {
            if ((int)slot2.size() != dim())
                throw std::invalid_argument("MomentumMap::applied: missing slot-2 values");
            for (int mu = 0; mu < dim(); ++mu) sub[var_id(VarKind::Q, mu)] = slot2.at(mu);
        }
        std::vector<Poly> out;
        out.reserve(dim());
        for (auto& c : comp_) out.push_back(c.substituted(sub));
        return out;
    }

    std::vector<Poly> components() const { return comp_; }

    /// Slot-symbol components as plain polynomials, e.g. for building values.
    static std::vector<Poly> slot_vars(const Context* ctx, VarKind kind) {
        std::vector<Poly> v;
        for (int mu = 0; mu < ctx->dim(); ++mu) v.push_back(Poly::var(ctx, kind, mu));
        return v;
    }

    std::string str(const std::string& name) const {
        std::string s;
        for (int mu = 0; mu < dim(); ++mu)
            s += name + "_" + std::to_string(mu) + " = " + comp_[mu].str() + "\n";
        return s;
    }

private:
    const Context* ctx_;
    int slots_;
    std::vector<Poly> comp_;
};

/// Formal substitution into one slot: the slot's symbols are replaced by the
/// components of a one-slot map (or by zero), truncated to order N.
inline MomentumMap momentum_substitute(const MomentumMap& m, int slot,
                                       const MomentumMap* value) {
    if (slot < 1 || slot > m.slot_count())
        throw std::out_of_range("momentum_substitute: slot out of range");
    const Context* ctx = m.ctx();
    int n = ctx->dim();
    if (value) {
        require_same(ctx, value->ctx());
        if (value->slot_count() != 1)
            throw std::invalid_argument("momentum_substitute: value must be a one-slot map");
    }
    // The value map speaks the slot-1 symbols k, which stay the free
    // variables of the result (as in D(k,q) = P(K^{-1}(k), q)).
    VarKind kind = slot == 1 ? VarKind::K : VarKind::Q;
    std::map<VarId, Poly> sub;
    for (int mu = 0; mu < n; ++mu)
        sub[var_id(kind, mu)] = value ? (*value)[mu] : Poly::zero(ctx);
    MomentumMap r(ctx, m.slot_count());
    for (int mu = 0; mu < n; ++mu) r[mu] = m[mu].substituted(sub);
    return r;
}

/// Compose one-slot maps: (f o g)(k) = f(g(k)).
inline MomentumMap compose1(const MomentumMap& f, const MomentumMap& g) {
    if (f.slot_count() != 1 || g.slot_count() != 1)
        throw std::invalid_argument("compose1: one-slot maps expected");
    MomentumMap r(f.ctx(), 1);
    auto vals = f.applied(g.components());
    for (int mu = 0; mu < f.dim(); ++mu) r[mu] = vals[mu];
    return r;
}

/// Series reversion of a one-slot map of the form id + O(a): the unique
/// truncated inverse under composition. Solved by a fixed-point iteration
/// that corrects one a-order per pass.
inline MomentumMap momentum_invert(const MomentumMap& m) {
    const Context* ctx = m.ctx();
    if (m.slot_count() != 1) throw std::invalid_argument("momentum_invert: one-slot map expected");
    MomentumMap id = MomentumMap::identity(ctx);
    for (int mu = 0; mu < ctx->dim(); ++mu)
        if (!(m[mu] - id[mu]).adeg_part(0).is_zero())
            throw std::invalid_argument("momentum_invert: map is not id + O(a)");
    MomentumMap r = id;
    for (int pass = 0; pass <= ctx->order() + 1; ++pass) {
        MomentumMap err = compose1(m, r) - id;
        if (err.is_zero()) break;
        r = r - err;
    }
    if (!(compose1(m, r) == id) || !(compose1(r, m) == id))
        throw std::logic_error("momentum_invert: reversion failed to converge");
    return r;
}

/// Componentwise formal partial derivative: row mu, column nu holds
/// d m_mu / d k_nu (plain derivative in the slot-1 symbol).
inline std::vector<std::vector<Poly>> momentum_partial(const MomentumMap& m) {
    if (m.slot_count() != 1)
        throw std::invalid_argument("momentum_partial: one-slot map expected");
    int n = m.dim();
    std::vector<std::vector<Poly>> J(n, std::vector<Poly>(n, Poly::zero(m.ctx())));
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) J[mu][nu] = m[mu].derivative(VarKind::K, nu);
    return J;
}

// --- transcription between momentum language and derivative language ----
//
// p_mu = -i d_mu. A vector operator O_mu(d) and its momentum form m_mu(k)
// are related by m(k) = -i O(d -> i k); scalar eigenvalue functions carry no
// -i prefactor.

inline std::map<VarId, Poly> d_to_ik(const Context* ctx, VarKind mom = VarKind::K) {
    std::map<VarId, Poly> sub;
    for (int mu = 0; mu < ctx->dim(); ++mu)
        sub[var_id(VarKind::D, mu)] = Poly::var(ctx, mom, mu).times_i();
    return sub;
}

inline std::map<VarId, Poly> k_to_minus_id(const Context* ctx, VarKind mom = VarKind::K) {
    std::map<VarId, Poly> sub;
    for (int mu = 0; mu < ctx->dim(); ++mu)
        sub[var_id(mom, mu)] = Poly::var(ctx, VarKind::D, mu).scaled(-GaussRat::i());
    return sub;
}

/// Vector operator component -> momentum-map component.
inline Poly op_to_momentum(const Poly& op, VarKind mom = VarKind::K) {
    return op.substituted(d_to_ik(op.ctx(), mom)).scaled(-GaussRat::i());
}

/// Momentum-map component -> vector operator component.
inline Poly momentum_to_op(const Poly& m, VarKind mom = VarKind::K) {
    return m.substituted(k_to_minus_id(m.ctx(), mom)).times_i();
}

/// Scalar operator (plane-wave eigenvalue) -> momentum function.
inline Poly scalar_op_to_momentum(const Poly& op, VarKind mom = VarKind::K) {
    return op.substituted(d_to_ik(op.ctx(), mom));
}

inline MomentumMap momentum_of_ops(const std::vector<Poly>& ops) {
    const Context* ctx = ops.at(0).ctx();
    MomentumMap m(ctx, 1);
    for (int mu = 0; mu < ctx->dim(); ++mu) m[mu] = op_to_momentum(ops[mu]);
    return m;
}

inline std::vector<Poly> ops_of_momentum(const MomentumMap& m) {
    std::vector<Poly> ops;
    for (int mu = 0; mu < m.dim(); ++mu) ops.push_back(momentum_to_op(m[mu]));
    return ops;
}

}  // namespace kappa
