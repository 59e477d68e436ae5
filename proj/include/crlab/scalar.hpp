#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace crlab {

// Exact rational scalar. GMP-backed, always canonical (gcd 1, positive
// denominator), so == is structural equality.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Rat rat(long n) { return Rat(n); }
inline Rat rat(long n, long d) { return Rat(n) / Rat(d); }

// Gaussian rational a + b*i.
struct Gauss {
    Rat re, im;

    Gauss() : re(0), im(0) {}
    Gauss(Rat r) : re(std::move(r)), im(0) {}
    Gauss(long n) : re(n), im(0) {}
    Gauss(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static Gauss i() { return Gauss(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }

    Gauss conj() const { return Gauss(re, -im); }

    Gauss operator-() const { return Gauss(-re, -im); }
    Gauss& operator+=(const Gauss& o) { re += o.re; im += o.im; return *this; }
    Gauss& operator-=(const Gauss& o) { re -= o.re; im -= o.im; return *this; }
    Gauss& operator*=(const Gauss& o) {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    friend Gauss operator+(Gauss a, const Gauss& b) { a += b; return a; }
    friend Gauss operator-(Gauss a, const Gauss& b) { a -= b; return a; }
    friend Gauss operator*(const Gauss& a, const Gauss& b) {
        return Gauss(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Gauss operator/(const Gauss& a, const Gauss& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw Error("DivisionByZero", "Gaussian division by zero");
        return Gauss((a.re * b.re + a.im * b.im) / n,
                     (a.im * b.re - a.re * b.im) / n);
    }
    Gauss& operator/=(const Gauss& o) { *this = *this / o; return *this; }
    friend bool operator==(const Gauss& a, const Gauss& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }
};

// --- text form -------------------------------------------------------------
// Rationals print as "n" or "n/d"; Gaussian values as "a", "b*i" or "a+b*i"
// (with the sign of b folded, e.g. "1/2-3/4*i"). parse/print round-trip
// exactly.

inline std::string print_rat(const Rat& x) { return x.str(); }

namespace detail {
inline Int parse_integer(const std::string& s) {
    std::size_t p = 0;
    bool neg = false;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) { neg = s[p] == '-'; ++p; }
    if (p >= s.size()) throw Error("ParseError", "bad integer literal '" + s + "'");
    for (std::size_t q = p; q < s.size(); ++q)
        if (s[q] < '0' || s[q] > '9')
            throw Error("ParseError", "bad integer literal '" + s + "'");
    Int v(s.substr(p));
    return neg ? Int(-v) : v;
}
} // namespace detail

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw Error("ParseError", "empty rational literal");
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(detail::parse_integer(s));
    Int n = detail::parse_integer(s.substr(0, slash));
    Int d = detail::parse_integer(s.substr(slash + 1));
    if (d == 0) throw Error("ParseError", "zero denominator in '" + s + "'");
    return Rat(n) / Rat(d); // division canonicalizes
}

inline std::string print_gauss(const Gauss& x) {
    auto imag_part = [&]() -> std::string {
        if (x.im == 1) return "i";
        if (x.im == -1) return "-i";
        return print_rat(x.im) + "*i";
    };
    if (x.im == 0) return print_rat(x.re);
    if (x.re == 0) return imag_part();
    std::string t = imag_part();
    if (t[0] != '-') t = "+" + t;
    return print_rat(x.re) + t;
}

inline Gauss parse_gauss(const std::string& s) {
    if (s.empty()) throw Error("ParseError", "empty scalar literal");
    // split a+b*i / a-b*i at the last top-level sign that is not the leading
    // one and not part of the first term's own sign
    auto strip_i = [](std::string t) -> std::string {
        // "b*i" -> "b", "i" -> "1", "-i" -> "-1"
        if (t == "i") return "1";
        if (t == "-i") return "-1";
        if (t == "+i") return "1";
        if (t.size() >= 2 && t.substr(t.size() - 2) == "*i")
            return t.substr(0, t.size() - 2);
        return "";
    };
    if (s.back() == 'i') {
        // find split point: a sign after position 0 separating the two terms
        for (std::size_t k = s.size() - 1; k > 0; --k) {
            if (s[k] == '+' || s[k] == '-') {
                std::string left = s.substr(0, k);
                std::string right = s.substr(k);
                std::string ip = strip_i(right);
                if (!ip.empty() && !left.empty() && left.back() != '/' &&
                    left.back() != '+' && left.back() != '-') {
                    return Gauss(parse_rat(left), parse_rat(ip));
                }
            }
        }
        std::string ip = strip_i(s);
        if (ip.empty()) throw Error("ParseError", "bad scalar literal '" + s + "'");
        return Gauss(Rat(0), parse_rat(ip));
    }
    return Gauss(parse_rat(s));
}

// --- field traits ----------------------------------------------------------

template <class K> struct FieldTraits;

template <> struct FieldTraits<Rat> {
    static constexpr bool is_complex = false;
    static const char* name() { return "Q"; }
    static Rat conj(const Rat& x) { return x; }
    static bool is_zero(const Rat& x) { return x == 0; }
    static std::string print(const Rat& x) { return print_rat(x); }
    static Rat parse(const std::string& s) { return parse_rat(s); }
};

template <> struct FieldTraits<Gauss> {
    static constexpr bool is_complex = true;
    static const char* name() { return "Q(i)"; }
    static Gauss conj(const Gauss& x) { return x.conj(); }
    static bool is_zero(const Gauss& x) { return x.is_zero(); }
    static std::string print(const Gauss& x) { return print_gauss(x); }
    static Gauss parse(const std::string& s) { return parse_gauss(s); }
};

template <class K> bool is_zero(const K& x) { return FieldTraits<K>::is_zero(x); }

} // namespace crlab
