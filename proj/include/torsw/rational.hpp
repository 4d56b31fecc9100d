#ifndef TORSW_RATIONAL_HPP
#define TORSW_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace torsw {

/// Exact rational scalar. Always canonical: lowest terms, positive denominator.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Canonical "p/q" string, "p" when q == 1.
inline std::string rat_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational string");
    Rational r(s);
    r.canonicalize();
    return r;
}

/// Bit-size proxy for pivot selection: smaller means a simpler entry.
inline std::size_t rat_complexity(const Rational& r) {
    return mpz_sizeinbase(r.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(r.get_den().get_mpz_t(), 2);
}

} // namespace torsw

#endif
