#include <doctest.h>

#include "torsw/fixtures.hpp"
#include "torsw/inverse.hpp"

using namespace torsw;

TEST_CASE("distinguished tuples") {
    // n = 3, ell = 2: the three index ranges
    CHECK(distinguished(1, 1, +1, 3, 2).tuple == std::vector<int>({1, 3}));
    CHECK(distinguished(1, 1, -1, 3, 2).tuple == std::vector<int>({2, 3}));
    CHECK(distinguished(0, 1, -1, 3, 2).tuple == std::vector<int>({1, 2}));
    CHECK(distinguished(0, 1, +1, 3, 2).tuple == std::vector<int>({4, 2}));
    CHECK(distinguished(3, 1, +1, 3, 2).tuple == std::vector<int>({3, 1}));
    CHECK(distinguished(3, 1, -1, 3, 2).tuple == std::vector<int>({4, 1}));

    // second place: swap entries 1 and j
    CHECK(distinguished(1, 2, +1, 3, 2).tuple == std::vector<int>({3, 1}));
    CHECK(distinguished(0, 2, +1, 3, 2).tuple == std::vector<int>({2, 4}));

    // ell = 1: a bare head vector
    CHECK(distinguished(1, 1, +1, 2, 1).tuple == std::vector<int>({1}));
    CHECK(distinguished(1, 1, -1, 2, 1).tuple == std::vector<int>({2}));
    CHECK(distinguished(0, 1, +1, 2, 1).tuple == std::vector<int>({3}));

    // all entries distinct, throughout the legal range
    for (int n = 1; n <= 4; ++n)
        for (int ell = 1; ell <= n; ++ell)
            for (int i = 0; i <= n; ++i)
                for (int j = 1; j <= ell; ++j)
                    for (int sign : {+1, -1}) {
                        std::vector<int> t = distinguished(i, j, sign, n, ell).tuple;
                        REQUIRE(static_cast<int>(t.size()) == ell);
                        for (std::size_t a = 0; a < t.size(); ++a)
                            for (std::size_t b = a + 1; b < t.size(); ++b)
                                CHECK(t[a] != t[b]);
                    }

    CHECK_THROWS_AS(distinguished(1, 1, +1, 2, 3), std::invalid_argument);
}

TEST_CASE("generator action on distinguished tensors") {
    CHECK(distinguished_tensor_checks(2, 1).all_pass());
    CHECK(distinguished_tensor_checks(2, 2).all_pass());
    CHECK(distinguished_tensor_checks(3, 2).all_pass());
    CHECK(distinguished_tensor_checks(3, 3).all_pass());
}

TEST_CASE("recovering the module coefficient") {
    BalancedModule b(evaluation_module(fixture_params(2, 2, 0), 2), 2);
    const int dm = b.source().dim();

    // roundtrip on every basis vector and a combined one
    for (int i = 0; i < dm; ++i) {
        RatVector m = unit_vector(dm, i);
        CHECK(recover(b, {1, 2}, b.to_quotient(m, {1, 2})) == m);
        CHECK(recover(b, {3, 1}, b.to_quotient(m, {3, 1})) == m);
    }
    RatVector mixed = {rat(2), rat(-1, 3)};
    CHECK(recover(b, {1, 2}, b.to_quotient(mixed, {1, 2})) == mixed);
    CHECK(recover(b, {1, 2}, RatVector(b.dim(), Rational(0))) == RatVector(dm, Rational(0)));

    // the embedding at a distinct tuple is injective
    CHECK(mat_kernel(embedding_matrix(b, {1, 2})).empty());

    // a vector of a different weight is not in the image
    CHECK_THROWS_AS(recover(b, {1, 2}, b.to_quotient(mixed, {1, 1})), RecoverError);

    // repeated tuples are refused outright
    CHECK_THROWS_AS(recover(b, {1, 1}, b.to_quotient(mixed, {1, 1})), std::invalid_argument);
}

TEST_CASE("coefficient extraction reads off the source module") {
    BalancedModule b(evaluation_module(fixture_params(2, 2, 1), 2), 2);
    for (int p = 1; p <= 2; ++p) {
        // h_i(0) has identity coefficients
        AlphaMap a0 = extract_alpha(b, b.toroidal_operator({GenKind::H, 1, 0}), p,
                                    {GenKind::H, 1, 0});
        CHECK(a0.mat == RatMatrix::identity(b.source().dim()));

        // h_i(k) recovers the k-th power of the loop-1 generator
        for (long k : {-2L, -1L, 1L, 2L}) {
            AlphaMap ak = extract_alpha(b, b.toroidal_operator({GenKind::H, 2, k}), p,
                                        {GenKind::H, 2, k});
            CHECK(ak.mat == mat_pow(b.source().gen_matrix(GenLabel::y(1, p)), k));
        }

        // x_0^+(0) recovers the loop-2 generator
        AlphaMap y = extract_alpha(b, b.toroidal_operator({GenKind::XPlus, 0, 0}), p,
                                   {GenKind::XPlus, 0, 0});
        CHECK(y.mat == b.source().gen_matrix(GenLabel::y(2, p)));
    }

    // full-quotient validation of an extracted family
    std::vector<AlphaMap> fam =
        extract_alpha_all(b, b.toroidal_operator({GenKind::H, 1, 1}), {GenKind::H, 1, 1});
    CHECK(validate_alpha_family(b, b.toroidal_operator({GenKind::H, 1, 1}),
                                {GenKind::H, 1, 1}, fam)
              .all_pass());
}

TEST_CASE("coefficient identity battery") {
    BalancedModule b2(evaluation_module(fixture_params(2, 2, 2), 2), 2);
    ClaimReport rep = verify_alpha_identities(b2, 2);
    CHECK(rep.all_pass());
    CHECK(rep.items.size() > 50);

    BalancedModule b3(evaluation_module(fixture_params(2, 2, 3), 2), 3);
    CHECK(verify_alpha_identities(b3, 1).all_pass());
}

TEST_CASE("reassembling the source module from the quotient operators") {
    for (const Fixture& f : evaluation_fixtures(2, 2, 3)) {
        BalancedModule b(f.module, 2);
        CHECK(assemble_aff2(b).same_matrices(f.module));
    }
    // larger matrix rank, same ell
    AffModule m = evaluation_module(fixture_params(2, 2, 1), 2);
    BalancedModule b(m, 3);
    CHECK(assemble_aff2(b).same_matrices(m));
}

TEST_CASE("mutation: a perturbed operator is rejected with a witness") {
    BalancedModule b(evaluation_module(fixture_params(2, 2, 0), 2), 2);
    RatMatrix z = b.toroidal_operator({GenKind::H, 1, 1}) + RatMatrix::identity(b.dim());
    try {
        extract_alpha_all(b, z, {GenKind::H, 1, 1});
        FAIL("expected the perturbed operator to be rejected");
    } catch (const AlphaError& e) {
        CHECK_FALSE(e.witness.empty());
    }
}
