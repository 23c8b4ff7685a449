#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace continua {

/// Exact rational scalar used by every metric and parameter computation.
using Rational = mpq_class;

/// Parses "p/q", "p" or a decimal integer string. Throws std::invalid_argument on malformed text.
inline Rational parse_rational(std::string_view text) {
    Rational r;
    std::string s(text);
    if (s.empty() || r.set_str(s, 10) != 0) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
    if (r.get_den() == 0) {
        throw std::invalid_argument("zero denominator: '" + s + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Floor of a rational as a signed long.
inline long floor_to_long(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

}  // namespace continua
