#include <doctest.h>

#include <memory>

#include "torsw/fixtures.hpp"
#include "torsw/glue.hpp"

using namespace torsw;

namespace {

std::shared_ptr<LoopSystem> make_system(const AffModule& m, int n, bool skip_verify = false) {
    auto space = std::make_shared<BalancedModule>(m, n, skip_verify);
    return std::make_shared<LoopSystem>(std::move(space));
}

} // namespace

TEST_CASE("gluing preconditions hold on presented systems") {
    auto s2 = make_system(evaluation_module(fixture_params(2, 2, 0), 2), 2);
    BatchReport r2 = check_conditions(*s2, 1, 25, 0);
    CHECK(r2.all_pass());
    CHECK(r2.total > 25);

    auto s3 = make_system(evaluation_module(fixture_params(3, 2, 1), 2), 2);
    CHECK(check_conditions(*s3, 1, 20, 1).all_pass());
}

TEST_CASE("nested brackets match their direct coefficient form") {
    auto sys = make_system(evaluation_module(fixture_params(2, 2, 2), 2), 2);
    const auto& basis = sys->basis();
    // a hand-picked depth-3 mixed-loop sequence
    std::vector<int> loops = {1, 2, 1};
    std::vector<RatMatrix> xs = {basis[0], basis[3], basis[1]};
    std::vector<long> ps = {1, -1, 2};
    CHECK(nested_bracket_op(*sys, loops, xs, ps) ==
          nested_bracket_direct(*sys, loops, xs, ps));

    // depth 1 is just rho itself
    CHECK(nested_bracket_op(*sys, {2}, {basis[2]}, {1}) == sys->rho(2, basis[2], 1));
}

TEST_CASE("the glued action restricts back to each loop") {
    auto s2 = make_system(evaluation_module(fixture_params(2, 2, 3), 2), 2);
    GluedAction rho2(s2);
    for (int b = 0; b < static_cast<int>(s2->basis().size()); ++b)
        for (long k = -1; k <= 1; ++k) {
            CHECK(rho2.basis_op(b, {k, 0}) == s2->rho_basis(1, b, k));
            CHECK(rho2.basis_op(b, {0, k}) == s2->rho_basis(2, b, k));
        }

    auto s3 = make_system(evaluation_module(fixture_params(3, 2, 2), 2), 2);
    GluedAction rho3(s3);
    for (int b = 0; b < static_cast<int>(s3->basis().size()); ++b)
        for (int i = 1; i <= 3; ++i) {
            std::vector<long> e(3, 0);
            e[i - 1] = 1;
            CHECK(rho3.basis_op(b, e) == s3->rho_basis(i, b, 1));
        }
}

TEST_CASE("glued action is a Lie homomorphism") {
    auto s2 = make_system(evaluation_module(fixture_params(2, 2, 0), 2), 2);
    BatchReport rep = verify_lie_hom(GluedAction(s2), 1);
    CHECK(rep.all_pass());
    CHECK(rep.total > 1000);

    auto s3 = make_system(evaluation_module(fixture_params(3, 2, 1), 2), 2);
    CHECK(verify_lie_hom(GluedAction(s3), 1).all_pass());
}

TEST_CASE("glued operators agree with the direct two-variable action") {
    auto space = std::make_shared<BalancedModule>(
        evaluation_module(fixture_params(2, 2, 1), 2), 2);
    auto sys = std::make_shared<LoopSystem>(space);
    GluedAction rho(sys);
    BatchReport rep = compare_with_direct(rho, *space, 2);
    CHECK(rep.all_pass());

    // the node-0 generators carry the second variable along, both signs
    CHECK(rho.operator_of(natural_rep({GenKind::XPlus, 0, 0}, 2), {-1, 1}) ==
          space->toroidal_operator({GenKind::XPlus, 0, -1}));
    CHECK(rho.operator_of(natural_rep({GenKind::XMinus, 0, 0}, 2), {-1, -1}) ==
          space->toroidal_operator({GenKind::XMinus, 0, -1}));
}

TEST_CASE("the recursion does not depend on the bracket decomposition") {
    auto sys = make_system(evaluation_module(fixture_params(2, 2, 0), 2), 2);
    GluedAction standard(sys);
    // replace the h_1 decomposition wholesale: h_1 = [E_13, E_31] + [E_32, E_23]
    Decomposition alt = [](const RatMatrix& x) {
        if (x == chevalley_h(1, 2)) {
            return std::vector<std::pair<RatMatrix, RatMatrix>>{
                {mat_unit(1, 3, 2), mat_unit(3, 1, 2)},
                {mat_unit(3, 2, 2), mat_unit(2, 3, 2)}};
        }
        return chevalley_decompose(x);
    };
    GluedAction rewired(sys, alt);
    for (long k1 = -1; k1 <= 1; ++k1)
        for (long k2 = -1; k2 <= 1; ++k2)
            CHECK(standard.operator_of(chevalley_h(1, 2), {k1, k2}) ==
                  rewired.operator_of(chevalley_h(1, 2), {k1, k2}));
}

TEST_CASE("mutation: a non-commuting pair of loop actions fails the conditions") {
    RatMatrix d(2, 2), u(2, 2), one = RatMatrix::identity(2);
    d.set(0, 0, 2);
    d.set(1, 1, 3);
    u.set(0, 0, 1);
    u.set(0, 1, 1);
    u.set(1, 1, 1);
    std::map<std::string, RatMatrix> mats;
    mats["y.1.1"] = d;
    mats["y.2.1"] = u;
    AffModule broken(2, 1, 2, mats); // the constructor does not police relations
    REQUIRE_FALSE(broken.verify().all_pass());
    auto sys = make_system(broken, 2, /*skip_verify=*/true);
    BatchReport rep = check_conditions(*sys, 1, 40, 0);
    CHECK_FALSE(rep.all_pass());
    bool explained = false;
    for (const std::string& f : rep.failures)
        if (f.find("(ii)") != std::string::npos || f.find("(iii)") != std::string::npos)
            explained = true;
    CHECK(explained);
}

TEST_CASE("lifting a family of single-loop modules") {
    // m = 1 degenerates to the plain loop action
    GluedAction single = lift_module_action({evaluation_module(fixture_params(1, 2, 0), 2)}, 2);
    auto ref = make_system(evaluation_module(fixture_params(1, 2, 0), 2), 2);
    for (int b = 0; b < static_cast<int>(ref->basis().size()); ++b)
        CHECK(single.basis_op(b, {1}) == ref->rho_basis(1, b, 1));

    // m = 3 battery
    std::vector<AffModule> parts;
    for (int i = 0; i < 3; ++i)
        parts.push_back(evaluation_module(fixture_params(1, 2, i), 2));
    GluedAction rho = lift_module_action(parts, 2, 1, 20, 0);
    CHECK(rho.loops() == 3);
    CHECK(verify_lie_hom(rho, 1).all_pass());

    // a broken family is refused
    std::map<std::string, RatMatrix> dm, um;
    RatMatrix d(2, 2), u(2, 2);
    d.set(0, 0, 2);
    d.set(1, 1, 3);
    u.set(0, 0, 1);
    u.set(0, 1, 1);
    u.set(1, 1, 1);
    dm["y.1.1"] = d;
    um["y.1.1"] = u;
    CHECK_THROWS_AS(lift_module_action({AffModule(1, 1, 2, dm), AffModule(1, 1, 2, um)}, 2),
                    GlueError);
}
