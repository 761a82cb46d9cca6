#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

#include "cutpoly/errors.hpp"

namespace cutpoly {

/// Exact scalar of the rational backend.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    require(den != 0, Errc::parameter, "rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "p/q", or a plain decimal like "1.25" / "-0.5" (exactly).
inline Rat parse_rat(const std::string& s) {
    require(!s.empty(), Errc::io, "empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rat q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            fail(Errc::io, "bad rational literal: " + s);
        require(mpz_sgn(mpq_denref(q.get_mpq_t())) != 0, Errc::io, "zero denominator: " + s);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rat q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            fail(Errc::io, "bad integer literal: " + s);
        q.canonicalize();
        return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits = digits.substr(1);
    if (digits.empty()) fail(Errc::io, "bad decimal literal: " + s);
    mpz_class num;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
        fail(Errc::io, "bad decimal literal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_len));
    Rat q(neg ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline double to_double(const Rat& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

/// Backend traits. The whole library is templated on T in {Rat, double}.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static bool is_zero(const Rat& v, double /*tol*/ = 0) { return sgn(v) == 0; }
    static bool is_neg(const Rat& v, double /*tol*/ = 0) { return sgn(v) < 0; }
    static Rat from_rat(const Rat& q) { return q; }
    static Rat from_int(long v) { return Rat(v); }
    static std::string str(const Rat& v) { return v.get_str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static bool is_zero(double v, double tol = 1e-9) { return std::fabs(v) <= tol; }
    static bool is_neg(double v, double tol = 1e-9) { return v < -tol; }
    static double from_rat(const Rat& q) { return q.get_d(); }
    static double from_int(long v) { return static_cast<double>(v); }
    static std::string str(double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

template <typename T>
T from_rat(const Rat& q) {
    return scalar_traits<T>::from_rat(q);
}

}  // namespace cutpoly
