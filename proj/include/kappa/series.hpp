#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "kappa/poly.hpp"

namespace kappa {

/// Truncated Taylor table of a scalar function of the two invariants
/// A = i(a d) and B = a^2 d^2. The weighted degree of A^m B^j is m + 2j
/// (its total a-degree after substitution), so keeping m + 2j <= order makes
/// every later substitution exact to the context truncation.
class ScalarSeries2 {
public:
    using Key = std::pair<int, int>;  // (m, j): coefficient of A^m B^j

    ScalarSeries2() : ctx_(nullptr), cap_(0) {}
    /// cap < 0 (the default) takes the context truncation order. A larger
    /// explicit cap gives headroom for closed forms that are later divided by
    /// B or a^2; evaluation re-truncates to the context order regardless.
    explicit ScalarSeries2(const Context* ctx, int cap = -1)
        : ctx_(ctx), cap_(cap < 0 ? ctx->order() : cap) {}

    static ScalarSeries2 constant(const Context* ctx, const GaussRat& c, int cap = -1) {
        ScalarSeries2 s(ctx, cap);
        s.set(0, 0, c);
        return s;
    }
    static ScalarSeries2 one(const Context* ctx, int cap = -1) {
        return constant(ctx, GaussRat::one(), cap);
    }
    static ScalarSeries2 A(const Context* ctx, int cap = -1) {
        ScalarSeries2 s(ctx, cap);
        s.set(1, 0, GaussRat::one());
        return s;
    }
    static ScalarSeries2 B(const Context* ctx, int cap = -1) {
        ScalarSeries2 s(ctx, cap);
        s.set(0, 1, GaussRat::one());
        return s;
    }

    /// (e^A - 1)/A as a truncated table; reciprocal() of it is the
    /// Bernoulli-number series A/(e^A - 1).
    static ScalarSeries2 expm1_over_A(const Context* ctx, int cap = -1) {
        ScalarSeries2 s(ctx, cap);
        GaussRat fact(1);  // becomes 1/(m+1)!
        for (int m = 0; m <= s.cap(); ++m) {
            fact = fact * (GaussRat::one() / GaussRat(m + 1));
            s.set(m, 0, fact);
        }
        return s;
    }

    /// e^A truncated.
    static ScalarSeries2 exp_A(const Context* ctx, int cap = -1) {
        ScalarSeries2 s(ctx, cap);
        GaussRat fact(1);
        s.set(0, 0, GaussRat::one());
        for (int m = 1; m <= s.cap(); ++m) {
            fact = fact * (GaussRat::one() / GaussRat(m));
            s.set(m, 0, fact);
        }
        return s;
    }

    const Context* ctx() const { return ctx_; }
    int cap() const { return cap_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<Key, GaussRat>& table() const { return c_; }

    GaussRat at(int m, int j) const {
        auto it = c_.find({m, j});
        return it == c_.end() ? GaussRat::zero() : it->second;
    }

    void set(int m, int j, const GaussRat& v) {
        if (m + 2 * j > cap()) return;
        if (v.is_zero()) c_.erase({m, j});
        else c_[{m, j}] = v;
    }

    bool operator==(const ScalarSeries2& o) const { return c_ == o.c_; }
    bool operator!=(const ScalarSeries2& o) const { return !(*this == o); }

    ScalarSeries2 operator-() const {
        ScalarSeries2 r(ctx_, cap_);
        for (auto& [k, v] : c_) r.c_[k] = -v;
        return r;
    }
    ScalarSeries2 operator+(const ScalarSeries2& o) const {
        require_same(ctx_, o.ctx_);
        if (cap_ != o.cap_) throw std::invalid_argument("ScalarSeries2: cap mismatch");
        ScalarSeries2 r = *this;
        for (auto& [k, v] : o.c_) r.set(k.first, k.second, r.at(k.first, k.second) + v);
        return r;
    }
    ScalarSeries2 operator-(const ScalarSeries2& o) const { return *this + (-o); }
    ScalarSeries2 operator*(const ScalarSeries2& o) const {
        require_same(ctx_, o.ctx_);
        if (cap_ != o.cap_) throw std::invalid_argument("ScalarSeries2: cap mismatch");
        ScalarSeries2 r(ctx_, cap_);
        for (auto& [k1, v1] : c_)
            for (auto& [k2, v2] : o.c_) {
                int m = k1.first + k2.first, j = k1.second + k2.second;
                if (m + 2 * j > cap()) continue;
                r.set(m, j, r.at(m, j) + v1 * v2);
            }
        return r;
    }
    ScalarSeries2 scaled(const GaussRat& g) const {
        ScalarSeries2 r(ctx_, cap_);
        if (g.is_zero()) return r;
        for (auto& [k, v] : c_) r.c_[k] = v * g;
        return r;
    }

    ScalarSeries2 partial_A() const {
        ScalarSeries2 r(ctx_, cap_);
        for (auto& [k, v] : c_)
            if (k.first > 0) r.set(k.first - 1, k.second, v * GaussRat(k.first));
        return r;
    }
    ScalarSeries2 partial_B() const {
        ScalarSeries2 r(ctx_, cap_);
        for (auto& [k, v] : c_)
            if (k.second > 0) r.set(k.first, k.second - 1, v * GaussRat(k.second));
        return r;
    }
    ScalarSeries2 mul_A() const {
        ScalarSeries2 r(ctx_, cap_);
        for (auto& [k, v] : c_) r.set(k.first + 1, k.second, v);
        return r;
    }
    ScalarSeries2 mul_B() const {
        ScalarSeries2 r(ctx_, cap_);
        for (auto& [k, v] : c_) r.set(k.first, k.second + 1, v);
        return r;
    }

    bool depends_on_A() const {
        for (auto& [k, v] : c_)
            if (k.first > 0) return true;
        return false;
    }

    /// Multiplicative inverse to working order; requires a nonzero constant.
    ScalarSeries2 reciprocal() const {
        GaussRat c0 = at(0, 0);
        if (c0.is_zero())
            throw std::invalid_argument("series_reciprocal: zero constant term");
        ScalarSeries2 r = constant(ctx_, GaussRat::one() / c0, cap_);
        for (int pass = 0; pass <= cap(); ++pass) {
            ScalarSeries2 err = one(ctx_, cap_) - (*this) * r;
            if (err.is_zero()) break;
            r = r + err.scaled(GaussRat::one() / c0);
        }
        if (!((*this) * r == one(ctx_, cap_)))
            throw std::logic_error("series_reciprocal: iteration failed to converge");
        return r;
    }

    /// Principal square root at the identity; requires constant term 1.
    ScalarSeries2 sqrt() const {
        if (at(0, 0) != GaussRat::one())
            throw std::invalid_argument("series_sqrt: constant term must be 1");
        ScalarSeries2 r = one(ctx_, cap_);
        GaussRat half(1, 2);
        for (int pass = 0; pass <= cap(); ++pass) {
            ScalarSeries2 err = *this - r * r;
            if (err.is_zero()) break;
            r = r + err.scaled(half);
        }
        if (!(r * r == *this))
            throw std::logic_error("series_sqrt: iteration failed to converge");
        return r;
    }

    /// Termwise antiderivative in B with zero constant term; the integrand
    /// must be a function of B alone.
    ScalarSeries2 integrate_B() const {
        if (depends_on_A())
            throw std::invalid_argument("series_integrate_B: integrand depends on A");
        ScalarSeries2 r(ctx_, cap_);
        for (auto& [k, v] : c_) r.set(0, k.second + 1, v / GaussRat(k.second + 1));
        return r;
    }

    /// F(B) -> F(B)/B for a series with no constant and no A content.
    /// This is how 1/a^2 prefactors are realized without ring division.
    ScalarSeries2 shift_down_B() const {
        ScalarSeries2 r(ctx_, cap_);
        for (auto& [k, v] : c_) {
            if (k.first != 0 || k.second == 0)
                throw std::invalid_argument("shift_down_B: series is not B * (power series in B)");
            r.set(0, k.second - 1, v);
        }
        return r;
    }

    /// Substitutes polynomial values for A and B (exact, truncated).
    Poly eval(const Poly& a_val, const Poly& b_val) const {
        const Context* pc = a_val.ctx();
        Poly r = Poly::zero(pc);
        std::map<int, Poly> apow, bpow;
        apow[0] = Poly::one(pc);
        bpow[0] = Poly::one(pc);
        for (auto& [k, v] : c_) {
            if (!apow.count(k.first)) apow[k.first] = a_val.pow(k.first);
            if (!bpow.count(k.second)) bpow[k.second] = b_val.pow(k.second);
            r += (apow[k.first] * bpow[k.second]).scaled(v);
        }
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [k, v] : c_) {
            if (!first) s += " + ";
            first = false;
            s += v.str();
            if (k.first) s += "*A" + (k.first > 1 ? "^" + std::to_string(k.first) : "");
            if (k.second) s += "*B" + (k.second > 1 ? "^" + std::to_string(k.second) : "");
        }
        return s;
    }

private:
    const Context* ctx_;
    int cap_;
    std::map<Key, GaussRat> c_;
};

}  // namespace kappa
