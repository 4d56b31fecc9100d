#ifndef TORSW_FIXTURES_HPP
#define TORSW_FIXTURES_HPP

#include <string>
#include <vector>

#include "torsw/aff.hpp"
#include "torsw/rational.hpp"

namespace torsw {

struct Fixture {
    std::string name;
    AffModule module;
};

/// Deterministic parameter tuples for the evaluation-module battery. Entry
/// `which` selects a window into a fixed pool of primes and fractions; the
/// same (m, ell, which) always yields the same module.
inline std::vector<std::vector<Rational>> fixture_params(int m, int ell, int which) {
    static const std::vector<Rational> pool = {
        rat(2),     rat(3),      rat(5),     rat(7),     rat(11),    rat(13),
        rat(17),    rat(19),     rat(23),    rat(29),    rat(1, 2),  rat(-3),
        rat(5, 7),  rat(-1, 4),  rat(9, 2),  rat(31),    rat(37),    rat(-5),
        rat(41),    rat(2, 3),   rat(43),    rat(-7, 3), rat(47),    rat(53),
        rat(59),    rat(61),     rat(3, 8),  rat(67),    rat(71),    rat(-11),
        rat(73),    rat(79),     rat(83),    rat(89),    rat(97),    rat(-2, 5)};
    std::vector<std::vector<Rational>> params(m, std::vector<Rational>(ell));
    std::size_t idx = static_cast<std::size_t>(which) * m * ell;
    for (int i = 0; i < m; ++i)
        for (int r = 0; r < ell; ++r) params[i][r] = pool[(idx++) % pool.size()];
    return params;
}

inline std::vector<Fixture> evaluation_fixtures(int m, int ell, int count) {
    std::vector<Fixture> out;
    for (int w = 0; w < count; ++w)
        out.push_back({"eval-" + std::to_string(m) + "-" + std::to_string(ell) + "-" +
                           std::to_string(w),
                       evaluation_module(fixture_params(m, ell, w), ell)});
    return out;
}

/// One-dimensional module: every sigma acts by the given scalar (so +1 or
/// -1), every y trivially.
inline AffModule scalar_module(int m, int ell, const Rational& sigma_scalar) {
    std::map<std::string, RatMatrix> mats;
    RatMatrix one = RatMatrix::identity(1);
    for (int k = 1; k < ell; ++k) mats[GenLabel::sigma(k).str()] = one * sigma_scalar;
    for (int i = 1; i <= m; ++i)
        for (int r = 1; r <= ell; ++r) mats[GenLabel::y(i, r).str()] = one;
    return AffModule(m, ell, 1, std::move(mats));
}

inline AffModule trivial_module(int m, int ell) { return scalar_module(m, ell, rat(1)); }
inline AffModule sign_module(int m, int ell) { return scalar_module(m, ell, rat(-1)); }

/// The group algebra of S_ell as a right module over itself, trivial y.
inline AffModule regular_module(int m, int ell) {
    std::vector<std::vector<Rational>> ones(m, std::vector<Rational>(ell, Rational(1)));
    return evaluation_module(ones, ell);
}

} // namespace torsw

#endif
