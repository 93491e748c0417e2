#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qss {

using Rational = mpq_class;

inline Rational rational_from_strings(const std::string& num, const std::string& den) {
    mpz_class n, d;
    if (n.set_str(num, 10) != 0) throw std::invalid_argument("bad integer literal: " + num);
    if (d.set_str(den, 10) != 0) throw std::invalid_argument("bad integer literal: " + den);
    if (d == 0) throw std::invalid_argument("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// Element of Q(i): re + im*i with exact rational parts.
struct GaussianRational {
    Rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const Rational& r) : re(r), im(0) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    // |z|^2 as a rational; exact and nonnegative.
    Rational norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
        Rational n2 = o.norm2();
        Rational r = (re * o.re + im * o.im) / n2;
        Rational i = (im * o.re - re * o.im) / n2;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    double re_double() const { return re.get_d(); }
    double im_double() const { return im.get_d(); }

    std::string str() const {
        std::string s = re.get_str();
        if (im != 0) {
            s += (im > 0 ? "+" : "") + im.get_str() + "i";
        }
        return s;
    }
};

inline GaussianRational gaussian_i() { return {Rational(0), Rational(1)}; }

// Nearest rational p/q with q <= max_den, by continued fractions (used when
// rounding float proposals back into exact arithmetic).
inline Rational rational_round(double x, unsigned long max_den) {
    if (!(max_den >= 1)) throw std::invalid_argument("max_den must be >= 1");
    if (!std::isfinite(x)) throw std::domain_error("cannot round non-finite value");
    bool neg = x < 0;
    if (neg) x = -x;
    if (x > 1e12) return Rational(mpz_class(neg ? -x : x));
    // Convergents p/q of the continued fraction of x.
    unsigned long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double fl = (r >= 9.2e18) ? 9.2e18 : r;
        unsigned long a = static_cast<unsigned long>(fl);
        unsigned long p2, q2;
        if (q1 != 0 && a > (max_den - q0) / q1) {
            // Take the best semiconvergent that still respects the bound.
            unsigned long amax = (max_den - q0) / q1;
            p2 = p0 + amax * p1;
            q2 = q0 + amax * q1;
            double cand1 = q2 ? static_cast<double>(p2) / q2 : 0.0;
            double cand2 = q1 ? static_cast<double>(p1) / q1 : 0.0;
            bool use_semi = q1 == 0 || std::abs(cand1 - x) < std::abs(cand2 - x);
            unsigned long pr = use_semi ? p2 : p1, qr = use_semi ? q2 : q1;
            Rational out(static_cast<long>(pr), static_cast<long>(qr ? qr : 1));
            out.canonicalize();
            return neg ? Rational(-out) : out;
        }
        p2 = p1 * a + p0;
        q2 = q1 * a + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = r - static_cast<double>(a);
        if (frac < 1e-14) break;
        r = 1.0 / frac;
    }
    Rational out(static_cast<long>(p1), static_cast<long>(q1 ? q1 : 1));
    out.canonicalize();
    return neg ? Rational(-out) : out;
}

}  // namespace qss
