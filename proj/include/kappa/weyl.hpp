#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kappa/momentum.hpp"
#include "kappa/poly.hpp"

namespace kappa {

/// Iterated action of the derivative generators on a polynomial in the
/// lower-index coordinates: d_mu acts as eta(mu) * d/dx_mu, which realizes
/// [d_mu, x_nu] = eta_{mu nu}.
inline Poly del_applied(const Poly& g, int mu) {
    return g.derivative(VarKind::X, mu).scaled(GaussRat(g.ctx()->eta(mu)));
}

inline Poly del_monomial_applied(const Poly& g, const Mono& beta) {
    Poly r = g;
    for (auto& [v, e] : beta.e) {
        if (var_kind(v) != VarKind::D)
            throw std::logic_error("del_monomial_applied: non-derivative key");
        for (int t = 0; t < e && !r.is_zero(); ++t) r = del_applied(r, var_comp(v));
    }
    return r;
}

/// Prefactor times a symbolic plane wave e^{i m x}; the momentum label is one
/// of the k / q symbol groups and stays unexpanded.
struct PlaneWave {
    Poly pref;
    VarKind mom = VarKind::K;

    bool operator==(const PlaneWave& o) const { return mom == o.mom && pref == o.pref; }

    static PlaneWave unit(const Context* ctx, VarKind mom) {
        return PlaneWave{Poly::one(ctx), mom};
    }
};

/// Normal-ordered element of the Weyl algebra: a sum of terms f(x) d^beta
/// with every x factor to the left of every derivative factor. The canonical
/// form makes equality a coefficient comparison.
class WeylOp {
public:
    WeylOp() : ctx_(nullptr) {}
    explicit WeylOp(const Context* ctx) : ctx_(ctx) {}

    static WeylOp zero(const Context* ctx) { return WeylOp(ctx); }
    static WeylOp one(const Context* ctx) { return from_xpoly(Poly::one(ctx)); }

    /// Multiplication operator by a polynomial free of derivative symbols.
    static WeylOp from_xpoly(const Poly& f) {
        if (f.contains_kind(VarKind::D))
            throw std::invalid_argument("WeylOp::from_xpoly: derivative symbols present");
        WeylOp w(f.ctx());
        if (!f.is_zero()) w.terms_[Mono::unit()] = f;
        return w;
    }

    /// Operator built from a polynomial in the derivative symbols (the
    /// coefficients may involve a and momentum symbols but not x).
    static WeylOp from_dpoly(const Poly& p) {
        WeylOp w(p.ctx());
        for (auto& [m, c] : p.terms()) {
            Mono dpart, rest;
            for (auto& [v, e] : m.e) {
                auto& dst = var_kind(v) == VarKind::D ? dpart : rest;
                dst.e.push_back({v, e});
                dst.tdeg = (uint16_t)(dst.tdeg + e);
                if (var_kind(v) == VarKind::A) dst.adeg = (uint16_t)(dst.adeg + e);
            }
            if (rest.contains_kind(VarKind::X))
                throw std::invalid_argument("WeylOp::from_dpoly: x symbols present");
            w.add(dpart, Poly::mono(p.ctx(), rest, c));
        }
        return w;
    }

    static WeylOp x(const Context* ctx, int mu) {
        return from_xpoly(Poly::var(ctx, VarKind::X, mu));
    }
    static WeylOp del(const Context* ctx, int mu) {
        return from_dpoly(Poly::var(ctx, VarKind::D, mu));
    }
    /// p_mu = -i d_mu.
    static WeylOp momentum(const Context* ctx, int mu) {
        return del(ctx, mu).scaled(-GaussRat::i());
    }

    const Context* ctx() const { return ctx_; }
    const std::map<Mono, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const WeylOp& o) const { return terms_ == o.terms_; }
    bool operator!=(const WeylOp& o) const { return !(*this == o); }

    WeylOp operator-() const {
        WeylOp r(ctx_);
        for (auto& [m, f] : terms_) r.terms_[m] = -f;
        return r;
    }
    WeylOp& operator+=(const WeylOp& o) {
        require_same(ctx_, o.ctx_);
        if (!ctx_) ctx_ = o.ctx_;
        for (auto& [m, f] : o.terms_) add(m, f);
        return *this;
    }
    WeylOp& operator-=(const WeylOp& o) {
        require_same(ctx_, o.ctx_);
        if (!ctx_) ctx_ = o.ctx_;
        for (auto& [m, f] : o.terms_) add(m, -f);
        return *this;
    }
    WeylOp operator+(const WeylOp& o) const { WeylOp r = *this; r += o; return r; }
    WeylOp operator-(const WeylOp& o) const { WeylOp r = *this; r -= o; return r; }

    WeylOp scaled(const GaussRat& c) const {
        WeylOp r(ctx_);
        if (c.is_zero()) return r;
        for (auto& [m, f] : terms_) r.terms_[m] = f.scaled(c);
        return r;
    }
    WeylOp times_i() const { return scaled(GaussRat::i()); }
    WeylOp scaled_poly(const Poly& c) const {
        WeylOp r(ctx_);
        for (auto& [m, f] : terms_) r.add(m, f * c);
        return r;
    }

    /// Normal-ordered product: d^beta f(x) = sum over multi-subsets eps of
    /// binom(beta,eps) (D^eps f) d^{beta-eps}, with D the metric derivative.
    WeylOp operator*(const WeylOp& o) const {
        require_same(ctx_, o.ctx_);
        WeylOp r(ctx_);
        for (auto& [beta, f] : terms_) {
            for (auto& [delta, g] : o.terms_) {
                // enumerate eps <= beta
                std::vector<std::pair<VarId, uint8_t>> bl(beta.e.begin(), beta.e.end());
                enumerate_eps(bl, 0, Mono::unit(), GaussRat::one(), g, [&](const Mono& rem,
                                                                           const GaussRat& cb,
                                                                           const Poly& dg) {
                    if (dg.is_zero()) return;
                    r.add(rem * delta, (f * dg).scaled(cb));
                });
            }
        }
        return r;
    }
    WeylOp& operator*=(const WeylOp& o) { *this = *this * o; return *this; }

    WeylOp commutator(const WeylOp& o) const { return *this * o - o * *this; }

    /// Action on a coordinate polynomial; derivative generators annihilate 1.
    Poly act(const Poly& g) const {
        Poly r = Poly::zero(ctx_ ? ctx_ : g.ctx());
        for (auto& [beta, f] : terms_) {
            Poly dg = del_monomial_applied(g, beta);
            if (!dg.is_zero()) r += f * dg;
        }
        return r;
    }

    /// Action on a plane wave: each d_mu contributes i m_mu on the
    /// exponential plus the derivative of the prefactor.
    PlaneWave act(const PlaneWave& w) const {
        Poly out = Poly::zero(ctx_);
        for (auto& [beta, f] : terms_) {
            Poly cur = w.pref;
            for (auto& [v, e] : beta.e) {
                int mu = var_comp(v);
                Poly ik = Poly::var(ctx_, w.mom, mu).times_i();
                for (int t = 0; t < e; ++t) cur = del_applied(cur, mu) + cur * ik;
            }
            out += f * cur;
        }
        return PlaneWave{out, w.mom};
    }

    bool x_free() const {
        for (auto& [m, f] : terms_)
            if (f.contains_kind(VarKind::X)) return false;
        return true;
    }

    /// The operator as a commutative polynomial in the derivative symbols;
    /// requires no x content.
    Poly as_dpoly() const {
        Poly r = Poly::zero(ctx_);
        for (auto& [m, f] : terms_) {
            if (f.contains_kind(VarKind::X))
                throw std::logic_error("WeylOp::as_dpoly: operator has x content");
            r += f * Poly::mono(ctx_, m, GaussRat::one());
        }
        return r;
    }

    /// True when the operator is x-linear, i.e. every term has exactly one x.
    bool x_linear() const {
        for (auto& [m, f] : terms_)
            for (auto& [mm, c] : f.terms())
                if (mm.degree_in(VarKind::X) != 1) return false;
        return true;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [m, f] : terms_) {
            if (!first) s += " + ";
            first = false;
            s += "(" + f.str() + ")";
            if (!m.is_unit()) s += "*" + m.str();
        }
        return s;
    }

private:
    template <typename Fn>
    void enumerate_eps(const std::vector<std::pair<VarId, uint8_t>>& bl, size_t idx,
                       Mono rem, GaussRat cb, const Poly& g, Fn&& emit) const {
        if (idx == bl.size()) {
            emit(rem, cb, g);
            return;
        }
        auto [v, e] = bl[idx];
        int mu = var_comp(v);
        GaussRat binom(1);
        Poly dg = g;
        for (int eps = 0; eps <= e; ++eps) {
            if (eps > 0) {
                binom = binom * GaussRat(e - eps + 1) / GaussRat(eps);
                dg = del_applied(dg, mu);
                if (dg.is_zero() && eps < e) {
                    // remaining eps values all vanish
                }
            }
            if (!dg.is_zero() || eps == 0) {
                Mono rem2 = rem;
                if (e - eps > 0) rem2 = rem2 * Mono::var(VarKind::D, mu, e - eps);
                enumerate_eps(bl, idx + 1, rem2, cb * binom, dg, emit);
            }
            if (dg.is_zero()) break;
        }
    }

    void add(const Mono& m, const Poly& f) {
        if (f.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, f);
        } else {
            it->second += f;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const Context* ctx_;
    std::map<Mono, Poly> terms_;
};

/// Commutator convenience.
inline WeylOp commutator(const WeylOp& u, const WeylOp& v) { return u.commutator(v); }

}  // namespace kappa
