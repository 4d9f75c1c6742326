#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kappa/context.hpp"
#include "kappa/rational.hpp"

namespace kappa {

/// Sparse monomial: sorted (variable, exponent) pairs with cached degrees.
struct Mono {
    std::vector<std::pair<VarId, uint8_t>> e;
    uint16_t tdeg = 0;  // total degree
    uint16_t adeg = 0;  // degree in the a-group (drives truncation)

    static Mono unit() { return Mono{}; }

    static Mono var(VarKind kind, int comp, int exp = 1) {
        Mono m;
        if (exp > 0) {
            m.e.push_back({var_id(kind, comp), (uint8_t)exp});
            m.tdeg = (uint16_t)exp;
            m.adeg = kind == VarKind::A ? (uint16_t)exp : 0;
        }
        return m;
    }

    bool is_unit() const { return e.empty(); }

    int exp_of(VarId v) const {
        for (auto& p : e)
            if (p.first == v) return p.second;
        return 0;
    }

    int degree_in(VarKind kind) const {
        int d = 0;
        for (auto& p : e)
            if (var_kind(p.first) == kind) d += p.second;
        return d;
    }

    bool contains_kind(VarKind kind) const {
        for (auto& p : e)
            if (var_kind(p.first) == kind) return true;
        return false;
    }

    Mono operator*(const Mono& o) const {
        Mono r;
        r.e.reserve(e.size() + o.e.size());
        size_t i = 0, j = 0;
        while (i < e.size() && j < o.e.size()) {
            if (e[i].first < o.e[j].first) r.e.push_back(e[i++]);
            else if (e[i].first > o.e[j].first) r.e.push_back(o.e[j++]);
            else {
                r.e.push_back({e[i].first, (uint8_t)(e[i].second + o.e[j].second)});
                ++i, ++j;
            }
        }
        while (i < e.size()) r.e.push_back(e[i++]);
        while (j < o.e.size()) r.e.push_back(o.e[j++]);
        r.tdeg = (uint16_t)(tdeg + o.tdeg);
        r.adeg = (uint16_t)(adeg + o.adeg);
        return r;
    }

    /// Restriction of the monomial to a set of kinds (the rest is dropped).
    Mono project(const std::set<VarKind>& kinds) const {
        Mono r;
        for (auto& p : e)
            if (kinds.count(var_kind(p.first))) {
                r.e.push_back(p);
                r.tdeg = (uint16_t)(r.tdeg + p.second);
                if (var_kind(p.first) == VarKind::A) r.adeg = (uint16_t)(r.adeg + p.second);
            }
        return r;
    }

    Mono exclude(const std::set<VarKind>& kinds) const {
        Mono r;
        for (auto& p : e)
            if (!kinds.count(var_kind(p.first))) {
                r.e.push_back(p);
                r.tdeg = (uint16_t)(r.tdeg + p.second);
                if (var_kind(p.first) == VarKind::A) r.adeg = (uint16_t)(r.adeg + p.second);
            }
        return r;
    }

    bool operator==(const Mono& o) const { return e == o.e; }

    /// Graded-lexicographic order: a-degree, then total degree, then the
    /// exponent list. Map iteration therefore prints series in ascending
    /// a-order, matching the order-by-order presentation everywhere else.
    bool operator<(const Mono& o) const {
        if (adeg != o.adeg) return adeg < o.adeg;
        if (tdeg != o.tdeg) return tdeg < o.tdeg;
        return e < o.e;
    }

    std::string str() const {
        if (e.empty()) return "1";
        std::string s;
        bool first = true;
        for (auto& p : e) {
            if (!first) s += "*";
            first = false;
            s += var_name(p.first);
            if (p.second > 1) s += "^" + std::to_string(p.second);
        }
        return s;
    }
};

/// Exact sparse multivariate polynomial over Gaussian rationals, truncated by
/// total a-degree at the context order. Zero coefficients are never stored.
class Poly {
public:
    using Terms = std::map<Mono, GaussRat>;

    Poly() : ctx_(nullptr) {}
    explicit Poly(const Context* ctx) : ctx_(ctx) {}

    static Poly zero(const Context* ctx) { return Poly(ctx); }

    static Poly constant(const Context* ctx, const GaussRat& c) {
        Poly p(ctx);
        if (!c.is_zero()) p.terms_[Mono::unit()] = c;
        return p;
    }
    static Poly one(const Context* ctx) { return constant(ctx, GaussRat::one()); }
    static Poly imag(const Context* ctx) { return constant(ctx, GaussRat::i()); }

    static Poly var(const Context* ctx, VarKind kind, int comp) {
        Poly p(ctx);
        p.terms_[Mono::var(kind, comp)] = GaussRat::one();
        return p;
    }

    static Poly mono(const Context* ctx, const Mono& m, const GaussRat& c) {
        Poly p(ctx);
        if (!c.is_zero() && m.adeg <= ctx->order()) p.terms_[m] = c;
        return p;
    }

    const Context* ctx() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r(ctx_);
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        require_same(ctx_, o.ctx_);
        if (!ctx_) ctx_ = o.ctx_;
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        require_same(ctx_, o.ctx_);
        if (!ctx_) ctx_ = o.ctx_;
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly operator+(const Poly& o) const { Poly r = *this; r += o; return r; }
    Poly operator-(const Poly& o) const { Poly r = *this; r -= o; return r; }

    Poly operator*(const Poly& o) const {
        require_same(ctx_, o.ctx_);
        Poly r(ctx_);
        const int cap = ctx_->order();
        for (auto& [m1, c1] : terms_) {
            if (m1.adeg > cap) continue;
            for (auto& [m2, c2] : o.terms_) {
                if (m1.adeg + m2.adeg > cap) continue;
                r.add_term(m1 * m2, c1 * c2);
            }
        }
        return r;
    }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    Poly scaled(const GaussRat& c) const {
        Poly r(ctx_);
        if (c.is_zero()) return r;
        for (auto& [m, co] : terms_) r.terms_[m] = co * c;
        return r;
    }
    Poly times_i() const { return scaled(GaussRat::i()); }

    Poly pow(int k) const {
        if (k < 0) throw std::invalid_argument("Poly::pow: negative exponent");
        Poly r = Poly::one(ctx_);
        Poly base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            base = (k >>= 1) ? base * base : base;
        }
        return r;
    }

    /// Plain partial derivative with respect to one variable.
    Poly derivative(VarKind kind, int comp) const {
        VarId v = var_id(kind, comp);
        Poly r(ctx_);
        for (auto& [m, c] : terms_) {
            int ex = m.exp_of(v);
            if (ex == 0) continue;
            Mono d;
            d.e.reserve(m.e.size());
            for (auto& p : m.e) {
                if (p.first == v) {
                    if (p.second > 1) d.e.push_back({p.first, (uint8_t)(p.second - 1)});
                } else {
                    d.e.push_back(p);
                }
            }
            d.tdeg = (uint16_t)(m.tdeg - 1);
            d.adeg = (uint16_t)(kind == VarKind::A ? m.adeg - 1 : m.adeg);
            r.add_term(d, c * GaussRat(ex));
        }
        return r;
    }

    /// Simultaneous substitution of whole variables by polynomials.
    Poly substituted(const std::map<VarId, Poly>& sub) const {
        Poly r(ctx_);
        for (auto& [m, c] : terms_) {
            Mono keep;
            std::vector<std::pair<VarId, uint8_t>> repl;
            for (auto& p : m.e) {
                if (sub.count(p.first)) repl.push_back(p);
                else {
                    keep.e.push_back(p);
                    keep.tdeg = (uint16_t)(keep.tdeg + p.second);
                    if (var_kind(p.first) == VarKind::A)
                        keep.adeg = (uint16_t)(keep.adeg + p.second);
                }
            }
            Poly term = Poly::mono(ctx_, keep, c);
            for (auto& p : repl) {
                if (term.is_zero()) break;
                term = term * sub.at(p.first).pow(p.second);
            }
            r += term;
        }
        return r;
    }

    /// Drops every term containing a variable of the given kind.
    Poly without_kind(VarKind kind) const {
        Poly r(ctx_);
        for (auto& [m, c] : terms_)
            if (!m.contains_kind(kind)) r.terms_[m] = c;
        return r;
    }

    bool contains_kind(VarKind kind) const {
        for (auto& [m, c] : terms_)
            if (m.contains_kind(kind)) return true;
        return false;
    }

    int degree_in(VarKind kind) const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(kind));
        return d;
    }

    int adeg_max() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, (int)m.adeg);
        return d;
    }

    /// The slice of the polynomial whose total a-degree equals deg.
    Poly adeg_part(int deg) const {
        Poly r(ctx_);
        for (auto& [m, c] : terms_)
            if (m.adeg == deg) r.terms_[m] = c;
        return r;
    }

    /// The slice whose total degree in the given kinds equals deg.
    Poly part_of_degree(const std::set<VarKind>& kinds, int deg) const {
        Poly r(ctx_);
        for (auto& [m, c] : terms_) {
            int d = 0;
            for (auto k : kinds) d += m.degree_in(k);
            if (d == deg) r.terms_[m] = c;
        }
        return r;
    }

    Poly truncated(int max_adeg) const {
        Poly r(ctx_);
        for (auto& [m, c] : terms_)
            if (m.adeg <= max_adeg) r.terms_[m] = c;
        return r;
    }

    /// Coefficient of a monomial pattern restricted to the given kinds; the
    /// result is a polynomial in the remaining variables.
    Poly coefficient_of(const std::set<VarKind>& kinds, const Mono& pattern) const {
        Poly r(ctx_);
        for (auto& [m, c] : terms_)
            if (m.project(kinds) == pattern) r.add_term(m.exclude(kinds), c);
        return r;
    }

    const GaussRat coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? GaussRat::zero() : it->second;
    }

    const GaussRat constant_term() const { return coeff(Mono::unit()); }

    /// Multiplicative inverse of a polynomial with unit-free part, computed by
    /// the geometric series in the a-grading (terminates under truncation).
    Poly reciprocal() const {
        GaussRat c0 = constant_term();
        if (c0.is_zero())
            throw std::invalid_argument("Poly::reciprocal: zero constant term");
        if ((*this - Poly::constant(ctx_, c0)).adeg_part(0).is_zero() == false)
            throw std::invalid_argument("Poly::reciprocal: nonconstant a-order-0 part");
        Poly u = Poly::constant(ctx_, c0) - *this;  // O(a)
        Poly inv_c0 = Poly::constant(ctx_, GaussRat::one() / c0);
        Poly r = Poly::zero(ctx_), upow = Poly::one(ctx_);
        for (int j = 0; j <= ctx_->order(); ++j) {
            r += upow.scaled(GaussRat::one() / c0);
            upow = upow * u * inv_c0;
            if (upow.is_zero()) break;
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [m, c] : terms_) {
            std::string cs;
            bool neg = false;
            if (c.im == 0) {
                neg = c.re < 0;
                mpq_class a = abs(c.re);
                if (a != 1 || m.is_unit()) cs = rat_str(a);
            } else if (c.re == 0) {
                neg = c.im < 0;
                mpq_class a = abs(c.im);
                cs = (a == 1) ? "i" : rat_str(a) + "*i";
            } else {
                cs = c.str();
            }
            if (first) {
                if (neg) s += "-";
                first = false;
            } else {
                s += neg ? " - " : " + ";
            }
            if (!cs.empty()) {
                s += cs;
                if (!m.is_unit()) s += "*";
            }
            if (!m.is_unit()) s += m.str();
        }
        return s;
    }

private:
    void add_term(const Mono& m, const GaussRat& c) {
        if (c.is_zero() || m.adeg > ctx_->order()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const Context* ctx_;
    Terms terms_;
};

/// eta^{mu nu} A_mu B_nu for two vector groups under the diagonal metric.
inline Poly dot(const Context* ctx, VarKind a, VarKind b) {
    Poly r(ctx);
    for (int mu = 0; mu < ctx->dim(); ++mu)
        r += Poly::var(ctx, a, mu) * Poly::var(ctx, b, mu).scaled(GaussRat(ctx->eta(mu)));
    return r;
}

/// eta^{mu nu} V_mu V_nu of one vector group (e.g. a^2, k^2, d^2).
inline Poly square(const Context* ctx, VarKind v) { return dot(ctx, v, v); }

}  // namespace kappa
