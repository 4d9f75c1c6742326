#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kappa/realization.hpp"

namespace kappa {

/// Ordered word in the noncommutative generators xhat.
using HatWord = std::vector<uint8_t>;

/// Element of the algebra generated by xhat and the derivatives, kept in the
/// normal form (xhat word) * (derivative monomial) with a-graded scalar
/// coefficients. The product rules depend on the realization through
/// F(d) xhat_nu = xhat_nu F(d) + (dF/dd_alpha) phi_{alpha nu}(d).
class HatOp {
public:
    using Key = std::pair<HatWord, Mono>;

    HatOp() : ctx_(nullptr) {}
    explicit HatOp(const Context* ctx) : ctx_(ctx) {}

    static HatOp one(const Context* ctx) {
        HatOp h(ctx);
        h.terms_[{HatWord{}, Mono::unit()}] = Poly::one(ctx);
        return h;
    }

    static HatOp word(const Context* ctx, const HatWord& w) {
        HatOp h(ctx);
        h.terms_[{w, Mono::unit()}] = Poly::one(ctx);
        return h;
    }

    static HatOp xhat(const Context* ctx, int mu) { return word(ctx, HatWord{(uint8_t)mu}); }

    /// A pure derivative-series element.
    static HatOp from_dpoly(const Poly& p) {
        HatOp h(p.ctx());
        for (auto& [m, c] : p.terms()) {
            Mono dpart, rest;
            for (auto& [v, e] : m.e) {
                auto& dst = var_kind(v) == VarKind::D ? dpart : rest;
                dst.e.push_back({v, e});
                dst.tdeg = (uint16_t)(dst.tdeg + e);
                if (var_kind(v) == VarKind::A) dst.adeg = (uint16_t)(dst.adeg + e);
            }
            h.add(HatWord{}, dpart, Poly::mono(p.ctx(), rest, c));
        }
        return h;
    }

    const Context* ctx() const { return ctx_; }
    const std::map<Key, Poly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    HatOp operator+(const HatOp& o) const {
        HatOp r = *this;
        for (auto& [k, c] : o.terms_) r.add(k.first, k.second, c);
        return r;
    }
    HatOp operator-(const HatOp& o) const {
        HatOp r = *this;
        for (auto& [k, c] : o.terms_) r.add(k.first, k.second, -c);
        return r;
    }
    HatOp scaled(const GaussRat& c) const {
        HatOp r(ctx_);
        if (c.is_zero()) return r;
        for (auto& [k, f] : terms_) r.terms_[k] = f.scaled(c);
        return r;
    }
    HatOp scaled_poly(const Poly& c) const {
        HatOp r(ctx_);
        for (auto& [k, f] : terms_) r.add(k.first, k.second, f * c);
        return r;
    }
    HatOp times_i() const { return scaled(GaussRat::i()); }

    void add(const HatWord& w, const Mono& dmono, const Poly& c) {
        if (c.is_zero()) return;
        Key k{w, dmono};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// The part with no derivative content: the image of the action on 1.
    HatOp projected_to_words() const {
        HatOp r(ctx_);
        for (auto& [k, c] : terms_)
            if (k.second.is_unit()) r.terms_[k] = c;
        return r;
    }

    bool word_only() const {
        for (auto& [k, c] : terms_)
            if (!k.second.is_unit()) return false;
        return true;
    }

private:
    const Context* ctx_;
    std::map<Key, Poly> terms_;
};

/// Realization-dependent arithmetic for HatOps: the product, the action on 1
/// (the bijection T), its inverse, and the module action of derivative
/// series on xhat polynomials.
class HatAlgebra {
public:
    explicit HatAlgebra(const Realization& r) : r_(&r), ctx_(r.ctx()) {}

    const Context* ctx() const { return ctx_; }
    const Realization& realization() const { return *r_; }

    /// Pushes a derivative polynomial through a word:
    /// F(d) xhat_{w} = sum of words times derivative series.
    HatOp push(const Poly& F, const HatWord& w) const {
        HatOp out(ctx_);
        if (F.is_zero()) return out;
        if (w.empty()) return HatOp::from_dpoly(F);
        int nu = w.front();
        HatWord tail(w.begin() + 1, w.end());
        HatOp through = push(F, tail);
        for (auto& [k, c] : through.terms()) {
            HatWord nw;
            nw.reserve(k.first.size() + 1);
            nw.push_back((uint8_t)nu);
            nw.insert(nw.end(), k.first.begin(), k.first.end());
            out.add(nw, k.second, c);
        }
        Poly C(ctx_);
        for (int al = 0; al < ctx_->dim(); ++al)
            C += F.derivative(VarKind::D, al) * r_->phi(al, nu);
        out = out + push(C, tail);
        return out;
    }

    HatOp mul(const HatOp& u, const HatOp& v) const {
        HatOp out(ctx_);
        for (auto& [ku, cu] : u.terms()) {
            for (auto& [kv, cv] : v.terms()) {
                Poly c = cu * cv;
                if (c.is_zero()) continue;
                Poly dpoly = Poly::mono(ctx_, ku.second, GaussRat::one());
                HatOp through = push(dpoly, kv.first);
                for (auto& [kt, ct] : through.terms()) {
                    HatWord w;
                    w.reserve(ku.first.size() + kt.first.size());
                    w.insert(w.end(), ku.first.begin(), ku.first.end());
                    w.insert(w.end(), kt.first.begin(), kt.first.end());
                    out.add(w, kt.second * kv.second, c * ct);
                }
            }
        }
        return out;
    }

    /// The action of the enveloping algebra on xhat polynomials: multiply
    /// and keep the derivative-free part (derivatives annihilate 1).
    HatOp act(const HatOp& u, const HatOp& fhat) const {
        return mul(u, fhat).projected_to_words();
    }

    /// Realizes a HatOp as a normal-ordered Weyl operator.
    WeylOp realize(const HatOp& h) const {
        WeylOp out(ctx_);
        for (auto& [k, c] : h.terms()) {
            WeylOp w = realize_word(k.first);
            w = w * WeylOp::from_dpoly(Poly::mono(ctx_, k.second, GaussRat::one()));
            out += w.scaled_poly(c);
        }
        return out;
    }

    WeylOp realize_word(const HatWord& w) const {
        auto it = word_cache_.find(w);
        if (it != word_cache_.end()) return it->second;
        WeylOp out = WeylOp::one(ctx_);
        for (uint8_t mu : w) out = out * r_->xhat(mu);
        word_cache_.emplace(w, out);
        return out;
    }

    /// T(ghat) = ghat acting on 1: the coordinate-polynomial image.
    Poly T(const HatOp& h) const { return realize(h).act(Poly::one(ctx_)); }

    /// Embeds a coordinate polynomial literally: each monomial becomes the
    /// ascending xhat word with the same scalar coefficient.
    HatOp embed(const Poly& f) const {
        HatOp out(ctx_);
        for (auto& [m, c] : f.terms()) {
            HatWord w;
            Mono rest;
            for (auto& [v, e] : m.e) {
                if (var_kind(v) == VarKind::X) {
                    for (int t = 0; t < e; ++t) w.push_back((uint8_t)var_comp(v));
                } else {
                    rest.e.push_back({v, e});
                    rest.tdeg = (uint16_t)(rest.tdeg + e);
                    if (var_kind(v) == VarKind::A) rest.adeg = (uint16_t)(rest.adeg + e);
                }
            }
            out.add(w, Mono::unit(), Poly::mono(ctx_, rest, c));
        }
        return out;
    }

    /// T^{-1}: the unique xhat polynomial with T(result) = f, solved by the
    /// order-by-order correction (T is unitriangular in the a-grading).
    HatOp unhat(const Poly& f) const {
        HatOp out(ctx_);
        Poly residual = f;
        for (int pass = 0; pass <= ctx_->order() + 1; ++pass) {
            if (residual.is_zero()) return out;
            out = out + embed(residual);
            residual = f - T(out);
        }
        if (!residual.is_zero())
            throw std::logic_error("unhat: correction did not terminate");
        return out;
    }

private:
    const Realization* r_;
    const Context* ctx_;
    mutable std::map<HatWord, WeylOp> word_cache_;
};

/// hat_T of a single ordered monomial.
inline Poly hat_T(const std::vector<int>& indices, const Realization& r) {
    HatAlgebra alg(r);
    HatWord w(indices.begin(), indices.end());
    return alg.T(HatOp::word(r.ctx(), w));
}

}  // namespace kappa
