#pragma once

#include <gmpxx.h>

#include <ostream>
#include <stdexcept>
#include <string>

namespace kappa {

/// Exact Gaussian rational re + i*im over GMP rationals.
///
/// Every identity in this library is checked over this field, so there are
/// no tolerances anywhere: a residual is either exactly zero or it is not.
struct GaussRat {
    mpq_class re;
    mpq_class im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long r) : re(r), im(0) {}
    GaussRat(long num, long den) : re(mpq_class(num, den)), im(0) {
        if (den == 0) throw std::invalid_argument("GaussRat: zero denominator");
        re.canonicalize();
    }
    GaussRat(const mpq_class& r) : re(r), im(0) {}
    GaussRat(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}

    static GaussRat zero() { return GaussRat(); }
    static GaussRat one() { return GaussRat(1); }
    /// The imaginary unit.
    static GaussRat i() { return GaussRat(mpq_class(0), mpq_class(1)); }

    /// Parses "p", "p/q" or "-p/q". Accepts a leading unicode minus sign.
    static GaussRat parse(const std::string& text);

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussRat operator/(const GaussRat& o) const {
        mpq_class nrm = o.re * o.re + o.im * o.im;
        if (nrm == 0) throw std::invalid_argument("GaussRat: division by zero");
        return GaussRat((re * o.re + im * o.im) / nrm, (im * o.re - re * o.im) / nrm);
    }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    /// Canonical text form: "3/4", "-i", "1/2*i", "(1-2/3*i)".
    std::string str() const;
};

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

inline std::string GaussRat::str() const {
    if (im == 0) return rat_str(re);
    std::string imag;
    if (im == 1) imag = "i";
    else if (im == -1) imag = "-i";
    else imag = rat_str(im) + "*i";
    if (re == 0) return imag;
    std::string s = "(" + rat_str(re);
    s += (im > 0 ? "+" : "-");
    mpq_class aim = abs(im);
    s += (aim == 1 ? std::string("i") : rat_str(aim) + "*i");
    s += ")";
    return s;
}

inline GaussRat GaussRat::parse(const std::string& text) {
    std::string t;
    // normalize U+2212 minus and strip spaces
    for (size_t p = 0; p < text.size();) {
        unsigned char c = text[p];
        if (c == 0xE2 && p + 2 < text.size() && (unsigned char)text[p + 1] == 0x88 &&
            (unsigned char)text[p + 2] == 0x92) {
            t += '-';
            p += 3;
        } else if (c == ' ' || c == '\t') {
            ++p;
        } else {
            t += (char)c;
            ++p;
        }
    }
    if (t.empty()) throw std::invalid_argument("GaussRat: empty rational literal");
    for (char c : t)
        if (!(std::isdigit((unsigned char)c) || c == '-' || c == '+' || c == '/'))
            throw std::invalid_argument("GaussRat: bad rational literal '" + text + "'");
    mpq_class q;
    if (q.set_str(t, 10) != 0)
        throw std::invalid_argument("GaussRat: bad rational literal '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("GaussRat: zero denominator in '" + text + "'");
    q.canonicalize();
    return GaussRat(q);
}

inline std::ostream& operator<<(std::ostream& os, const GaussRat& g) { return os << g.str(); }

}  // namespace kappa
