#include "locres/errors.hpp"
#include "locres/model_library.hpp"
#include "locres/pairings.hpp"

#include <doctest.h>

using namespace locres;

TEST_CASE("product-of-spheres builder") {
    auto m = build_p1_power(3);
    CHECK(m.fixed_point_count() == 8);
    CHECK(m.dim_x() == 6);
    CHECK(m.streamed());
    // moment images are +-3 once and +-1 three times each
    int mu3 = 0, mu1 = 0;
    std::size_t positive = 0;
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i) {
        Rat mu = m.fixed_point(i).moment_image[0];
        if (abs(mu) == 3) ++mu3;
        if (abs(mu) == 1) ++mu1;
        if (mu > 0) ++positive;
    }
    CHECK(mu3 == 2);
    CHECK(mu1 == 6);
    CHECK(positive == 4); // 2^(N-1) for odd N

    auto m1 = build_p1_power(1);
    CHECK(m1.fixed_point_count() == 2);
    CHECK(m1.fixed_point(0).moment_image[0] == 1);
    CHECK(m1.fixed_point(1).moment_image[0] == -1);

    CHECK_THROWS_AS(build_p1_power(4), model_error);
}

TEST_CASE("projective-space builder") {
    auto m = build_projective_space(3);
    REQUIRE(m.fixed_point_count() == 4);
    // e1: weights {-2, 2, 4}, moment image 1
    FixedPointComponent e1 = m.fixed_point(1);
    CHECK(e1.moment_image[0] == 1);
    std::multiset<Rat> ws;
    for (const auto& [w, mult] : e1.weights) ws.insert(w[0]);
    CHECK(ws == std::multiset<Rat>{Rat(-2), Rat(2), Rat(4)});

    for (unsigned n : {3u, 5u}) {
        auto mp = build_projective_space(n);
        for (unsigned k = 0; k <= n; ++k) {
            FixedPointComponent f = mp.fixed_point(k);
            Rat prod(1);
            unsigned negs = 0;
            for (const auto& [w, mult] : f.weights) {
                prod *= abs(w[0]);
                if (w[0] < 0) ++negs;
            }
            // |product of weights| = 2^N k! (N-k)!
            CHECK(prod == Rat(rat_pow(Rat(2), n) * Rat(factorial(k)) *
                              Rat(factorial(n - k))));
            // number of negative weights is k
            CHECK(negs == k);
        }
    }
    CHECK_THROWS_AS(build_projective_space(6), model_error);
}

TEST_CASE("class restriction for the product model") {
    unsigned n = 3;
    auto m = build_p1_power(n);
    // xi_1 restricts to n_1 psi
    MultiPoly xi1 = MultiPoly::variable(n + 1, 0);
    auto eta = restrict_class_example1(n, xi1);
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i) {
        auto signs = p1_power_signs(n, i);
        CHECK(eta(i, m.fixed_point(i)) ==
              MultiPoly::variable(1, 0) * Scalar(Rat(signs[0])));
    }
    // the defining relation xi_j^2 - alpha^2 restricts to zero everywhere
    MultiPoly rel = MultiPoly::variable(n + 1, 1, 2) - MultiPoly::variable(n + 1, n, 2);
    auto eta_rel = restrict_class_example1(n, rel);
    for (std::size_t i = 0; i < m.fixed_point_count(); ++i)
        CHECK(eta_rel(i, m.fixed_point(i)).is_zero());
    // alpha^2 restricts to psi^2
    MultiPoly a2 = MultiPoly::variable(n + 1, n, 2);
    auto eta_a = restrict_class_example1(n, a2);
    CHECK(eta_a(0, m.fixed_point(0)) == MultiPoly::variable(1, 0, 2));
}

TEST_CASE("relation generator of the product model") {
    // N=5, Q={1,2,3}, q=1: a degree-2 polynomial in xi, alpha^2
    MultiPoly q = MultiPoly::constant(6, Scalar(1));
    MultiPoly elem = relation_generator_example1(5, {1, 2, 3}, q);
    CHECK(elem.total_degree() == 2);
    // invariance under alpha -> -alpha after the division
    std::vector<LinearForm> flip;
    for (std::size_t j = 0; j < 6; ++j) {
        LinearForm f = LinearForm::unit(6, j);
        if (j == 5) f = -f;
        flip.push_back(f);
    }
    CHECK(elem.substitute_linear(flip) == elem);
    // subsets below (N+1)/2 violate the kernel description
    CHECK_THROWS_AS(relation_generator_example1(5, {1, 2}, q), model_error);
}

TEST_CASE("relation generators of the projective model") {
    auto [p_plus, p_minus_over_alpha] = relation_generators_example2(3);
    // P = (xi - alpha)(xi - 3 alpha) from mu_2 = -1, mu_3 = -3
    MultiPoly xi = MultiPoly::variable(2, 0), alpha = MultiPoly::variable(2, 1);
    MultiPoly p = (xi - alpha) * (xi - alpha * Scalar(3));
    std::vector<LinearForm> flip = {LinearForm::unit(2, 0), -LinearForm::unit(2, 1)};
    CHECK(p_plus == p + p.substitute_linear(flip));
    // P+ is even in alpha, P-/alpha too (P- odd before the division)
    CHECK(p_plus.substitute_linear(flip) == p_plus);
    CHECK(p_minus_over_alpha.substitute_linear(flip) == p_minus_over_alpha);
    // deg P+ = (N+1)/2
    CHECK(p_plus.total_degree() == 2);
    auto [p7, m7] = relation_generators_example2(7);
    CHECK(p7.total_degree() == 4);
    CHECK(m7.total_degree() == 3);
}

TEST_CASE("binomial vanishing sums") {
    CHECK(binomial_vanishing(5, 3).is_zero());
    CHECK(binomial_vanishing(5, 5) == Scalar(-120)); // (-1)^r r!
    CHECK(binomial_vanishing(0, 0) == Scalar(1));
    for (unsigned r = 0; r <= 12; ++r)
        for (unsigned s = 0; s + 2 <= r; ++s) CHECK(binomial_vanishing(r, s).is_zero());
}

TEST_CASE("worked-example term builder") {
    ConeSpec cone = ConeSpec::positive_orthant(2);
    RaySpec ray = RaySpec::standard(2);
    auto t31 = build_su3_example_terms(LinearForm(RatVec{Rat(3), Rat(1)}));
    CHECK(jk_residue(t31, cone, ray) == Scalar::i());
    auto t13 = build_su3_example_terms(LinearForm(RatVec{Rat(1), Rat(3)}));
    CHECK(jk_residue(t13, cone, ray) == Scalar::i());
    // on the wall the ray regularization is required
    auto t22 = build_su3_example_terms(LinearForm(RatVec{Rat(2), Rat(2)}));
    RaySpec zero{LinearForm(RatVec{Rat(0), Rat(0)})};
    CHECK_THROWS_AS(jk_residue(t22, cone, zero), choice_error);
}

TEST_CASE("verify enumerations") {
    auto checks5 = verify_example1(5);
    CHECK(checks5.size() == 10); // C(5,3) subsets, q = 1
    for (const auto& c : checks5) CHECK(c.value.is_zero());

    auto checks3 = verify_example2(3);
    CHECK(checks3.empty()); // no degree-matched classes at N = 3

    auto checks5p = verify_example2(5);
    CHECK(checks5p.size() == 1);
    CHECK(checks5p[0].value.is_zero());
}

TEST_CASE("presets") {
    CHECK(build_preset("p1pow:3").fixed_point_count() == 8);
    CHECK(build_preset("projN:5").fixed_point_count() == 6);
    CHECK(build_preset("su3demo").rank() == 2);
    CHECK_THROWS_AS(build_preset("nonsense"), parse_error);
    CHECK_THROWS_AS(build_preset("p1pow:"), parse_error);
}
