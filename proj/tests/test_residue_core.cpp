#include "locres/errors.hpp"
#include "locres/model_library.hpp"
#include "locres/residue.hpp"

#include <doctest.h>

#include <random>

using namespace locres;

namespace {

MeromorphicTerm term1(const MultiPoly& num, std::vector<std::pair<LinearForm, unsigned>> den,
                      const Rat& mu) {
    MeromorphicTerm t;
    t.numerator = num;
    t.denominator = std::move(den);
    t.exponent = LinearForm(RatVec{mu});
    return t;
}

LinearForm lf2(long a, long b) { return LinearForm(RatVec{Rat(a), Rat(b)}); }

MeromorphicTerm omega_lambda(std::vector<LinearForm> betas, LinearForm lambda,
                             MultiPoly num = MultiPoly()) {
    MeromorphicTerm t;
    t.numerator = num.nvars() == lambda.dim() && !num.is_zero()
                      ? num
                      : MultiPoly::constant(lambda.dim(), Scalar(1));
    for (auto& b : betas) t.denominator.emplace_back(b, 1);
    t.exponent = lambda;
    return t;
}

} // namespace

TEST_CASE("rank-1 residue examples") {
    MultiPoly one = MultiPoly::constant(1, Scalar(1));
    LinearForm psi(RatVec{Rat(1)});
    CHECK(residue_rank1(term1(one, {{psi, 1}}, Rat(2))) == Scalar(1));
    CHECK(residue_rank1(term1(one, {{psi, 3}}, Rat(2))) == Scalar(-2)); // (2i)^2/2!
    CHECK(residue_rank1(term1(one, {{psi, 2}}, Rat(-1))).is_zero());
    CHECK(residue_rank1(term1(MultiPoly::variable(1, 0, 2), {}, Rat(3))).is_zero());
    // numerator cancels the pole entirely
    CHECK(residue_rank1(term1(MultiPoly::variable(1, 0, 3), {{psi, 2}}, Rat(0))).is_zero());
    // mu = 0 with a genuine pole violates the regular-value hypothesis
    CHECK_THROWS_AS(residue_rank1(term1(one, {{psi, 1}}, Rat(0))), model_error);
    // scaled denominator forms fold into the scalar
    CHECK(residue_rank1(term1(one, {{LinearForm(RatVec{Rat(-2)}), 1}}, Rat(1))) ==
          Scalar(Rat(-1, 2)));
}

TEST_CASE("admissibility") {
    ConeSpec orthant = ConeSpec::positive_orthant(2);
    auto t = omega_lambda({lf2(1, 0), lf2(0, 1), lf2(1, 1)}, lf2(3, 1));
    CHECK(admissible({t}, orthant));
    auto bad = omega_lambda({lf2(1, -1)}, lf2(3, 1));
    CHECK_FALSE(admissible({bad}, orthant));
    MeromorphicTerm empty;
    empty.numerator = MultiPoly::constant(2, Scalar(1));
    empty.exponent = lf2(1, 1);
    CHECK(admissible({empty}, orthant));
}

TEST_CASE("worked rank-2 example: both chambers, both orders") {
    ConeSpec cone = ConeSpec::positive_orthant(2);
    RaySpec ray = RaySpec::standard(2);
    std::vector<LinearForm> betas = {lf2(1, 0), lf2(0, 1), lf2(1, 1)};

    // lambda^1 > lambda^2: value i * lambda^2
    CHECK(jk_residue({omega_lambda(betas, lf2(3, 1))}, cone, ray) == Scalar::i());
    // lambda^2 > lambda^1: value i * lambda^1
    CHECK(jk_residue({omega_lambda(betas, lf2(1, 3))}, cone, ray) == Scalar::i());
    CHECK(jk_residue({omega_lambda(betas, lf2(5, 2))}, cone, ray) ==
          Scalar(Rat(0), Rat(2)));

    std::vector<std::size_t> order{1, 0};
    for (auto lam : {lf2(3, 1), lf2(1, 3), lf2(7, 4), lf2(2, 9)}) {
        Scalar a = jk_residue({omega_lambda(betas, lam)}, cone, ray);
        Scalar b = jk_residue({omega_lambda(betas, lam)}, cone, ray, &order);
        CHECK(a == b);
    }
}

TEST_CASE("Kronecker systems and the cone support") {
    ConeSpec cone = ConeSpec::positive_orthant(2);
    RaySpec ray = RaySpec::standard(2);
    std::vector<LinearForm> basis = {lf2(1, 0), lf2(0, 1)};
    CHECK(jk_residue({omega_lambda(basis, lf2(1, 1))}, cone, ray) == Scalar(1));
    // zero outside the cone spanned by the denominators
    CHECK(jk_residue({omega_lambda(basis, lf2(-1, 2))}, cone, ray).is_zero());
}

TEST_CASE("wall exponent requires the ray") {
    ConeSpec cone = ConeSpec::positive_orthant(2);
    std::vector<LinearForm> betas = {lf2(1, 0), lf2(0, 1), lf2(1, 1)};
    auto term = omega_lambda(betas, lf2(2, 2));
    RaySpec zero{LinearForm(RatVec{Rat(0), Rat(0)})};
    CHECK_THROWS_AS(jk_residue({term}, cone, zero), choice_error);
    // either generic ray resolves the wall to the continuous value 2i
    CHECK(jk_residue({term}, cone, RaySpec{lf2(1, 0)}) == Scalar(Rat(0), Rat(2)));
    CHECK(jk_residue({term}, cone, RaySpec{lf2(0, 1)}) == Scalar(Rat(0), Rat(2)));
}

TEST_CASE("non-admissible cone is rejected") {
    ConeSpec orthant = ConeSpec::positive_orthant(2);
    auto bad = omega_lambda({lf2(1, -1), lf2(1, 1)}, lf2(2, 1));
    CHECK_THROWS_AS(jk_residue({bad}, orthant, RaySpec::standard(2)), choice_error);
}

TEST_CASE("linearity in the term list") {
    ConeSpec cone = ConeSpec::positive_orthant(2);
    RaySpec ray = RaySpec::standard(2);
    auto a = omega_lambda({lf2(1, 0), lf2(0, 1), lf2(1, 1)}, lf2(3, 1));
    auto b = omega_lambda({lf2(1, 0), lf2(0, 1)}, lf2(2, 5));
    Scalar va = jk_residue({a}, cone, ray);
    Scalar vb = jk_residue({b}, cone, ray);
    auto a2 = a, b3 = b;
    a2.numerator *= Scalar(2);
    b3.numerator *= Scalar(Rat(0), Rat(3));
    CHECK(jk_residue({a2, b3}, cone, ray) ==
          Scalar(2) * va + Scalar(Rat(0), Rat(3)) * vb);
}

TEST_CASE("rank-1 agreement between the two residue routes") {
    ConeSpec plus = ConeSpec::ray(RatVec{Rat(1)});
    RaySpec ray = RaySpec::standard(1);
    std::mt19937 rng(0xab5);
    std::uniform_int_distribution<long> mu_d(1, 7), pow_d(1, 4);
    for (int trial = 0; trial < 30; ++trial) {
        MeromorphicTerm t;
        t.numerator = MultiPoly::variable(1, 0, trial % 3);
        t.denominator = {{LinearForm(RatVec{Rat(1)}), static_cast<unsigned>(pow_d(rng))}};
        long mu = mu_d(rng) * (trial % 2 ? 1 : -1);
        t.exponent = LinearForm(RatVec{Rat(mu)});
        CHECK(jk_residue({t}, plus, ray) == residue_rank1(t));
    }
}

TEST_CASE("homogeneous degree selection in the scaled limit") {
    // residue of psi^J e^{i s lambda} / product vanishes as s -> 0+ unless
    // (number of denominator factors) - |J| = rank
    ConeSpec cone = ConeSpec::positive_orthant(2);
    std::vector<LinearForm> betas = {lf2(1, 0), lf2(0, 1), lf2(1, 1)};
    auto with_num = [&](const LinearForm& lam, MultiPoly num) {
        return omega_lambda(betas, lam, num);
    };
    // |J| = 0: N - |J| = 3 != 2: limit vanishes
    CHECK(jk_residue_limit({with_num(lf2(3, 1), MultiPoly::constant(2, Scalar(1)))}, cone)
              .is_zero());
    // |J| = 1: N - |J| = 2 = l: the limit is the chamber derivative, nonzero
    // where the cone function depends on lambda^1
    CHECK(jk_residue_limit({with_num(lf2(1, 3), MultiPoly::variable(2, 0))}, cone) ==
          Scalar(1));
    CHECK(jk_residue_limit({with_num(lf2(3, 1), MultiPoly::variable(2, 0))}, cone).is_zero());
    // |J| = 2: derivative order beyond the homogeneity degree: identically zero
    CHECK(
        jk_residue_limit({with_num(lf2(3, 1), MultiPoly::variable(2, 0, 2))}, cone).is_zero());
}

TEST_CASE("non-spanning denominators vanish in the scaled limit") {
    ConeSpec cone = ConeSpec::positive_orthant(2);
    auto t = omega_lambda({lf2(1, 0), lf2(2, 0)}, lf2(3, 1));
    CHECK(jk_residue_limit({t}, cone).is_zero());
}

TEST_CASE("series-expansion reconstruction of the worked example") {
    // expanding e^{i lambda psi} with a retained scaled regulator and summing
    // the limits reproduces the unexpanded residue
    ConeSpec cone = ConeSpec::positive_orthant(2);
    RaySpec ray = RaySpec::standard(2);
    std::vector<LinearForm> betas = {lf2(1, 0), lf2(0, 1), lf2(1, 1)};
    for (auto lam : {lf2(3, 1), lf2(1, 3), lf2(4, 7)}) {
        Scalar direct = jk_residue({omega_lambda(betas, lam)}, cone, ray);
        MultiPoly lam_psi =
            MultiPoly::variable(2, 0) * Scalar(lam[0]) + MultiPoly::variable(2, 1) * Scalar(lam[1]);
        Scalar total;
        MultiPoly power = MultiPoly::constant(2, Scalar(1));
        for (unsigned mdeg = 0; mdeg <= 4; ++mdeg) {
            if (mdeg > 0) power *= lam_psi * Scalar::i();
            MultiPoly num = power * Scalar(Rat(1) / Rat(factorial(mdeg)));
            total += jk_residue_limit({omega_lambda(betas, lam, num)}, cone);
        }
        CHECK(total == direct);
    }
}

TEST_CASE("cross-algorithm agreement on the worked example with numerators") {
    ConeSpec cone = ConeSpec::positive_orthant(2);
    RaySpec ray = RaySpec::standard(2);
    std::vector<LinearForm> betas = {lf2(1, 0), lf2(0, 1), lf2(1, 1)};
    for (auto lam : {lf2(3, 1), lf2(1, 3), lf2(5, 2), lf2(2, 5)}) {
        auto t0 = omega_lambda(betas, lam);
        CHECK(jk_residue({t0}, cone, ray) == jk_residue_via_h({t0}, cone, ray));
        auto t1 = omega_lambda(betas, lam, MultiPoly::variable(2, 0));
        CHECK(jk_residue({t1}, cone, ray) == jk_residue_via_h({t1}, cone, ray));
    }
}

TEST_CASE("via-h calibration on the independent case") {
    // the N = l Kronecker normalization that pins the unit constant
    ConeSpec cone = ConeSpec::positive_orthant(2);
    RaySpec ray = RaySpec::standard(2);
    auto t = omega_lambda({lf2(1, 0), lf2(0, 1)}, lf2(1, 1));
    CHECK(jk_residue_via_h({t}, cone, ray) == Scalar(1));
    CHECK(jk_residue_via_h({t}, cone, ray) == kViaHUnit * jk_residue({t}, cone, ray));
}

TEST_CASE("ray genericity check") {
    auto t = omega_lambda({lf2(1, 0), lf2(0, 1), lf2(1, 1)}, lf2(3, 1));
    CHECK(RaySpec{lf2(1, 7)}.is_generic_for({t}));
    CHECK_FALSE(RaySpec{lf2(1, 0)}.is_generic_for({t})); // on a denominator ray
    CHECK_FALSE(RaySpec{lf2(2, 2)}.is_generic_for({t}));
    CHECK(RaySpec::standard(2).is_generic_for({t}));
}

TEST_CASE("degenerate higher-order poles merge exactly") {
    // coincident poles: psi1 and 2 psi1 share the pole hyperplane
    ConeSpec cone = ConeSpec::positive_orthant(2);
    RaySpec ray = RaySpec::standard(2);
    MeromorphicTerm t;
    t.numerator = MultiPoly::constant(2, Scalar(1));
    t.denominator = {{lf2(1, 0), 1}, {lf2(2, 0), 1}, {lf2(0, 1), 1}};
    t.exponent = lf2(3, 1);
    // 1/(psi1 * 2psi1 * psi2) = (1/2) e^{...}/(psi1^2 psi2): residue
    // (1/2)(i lambda^1) at the double pole
    CHECK(jk_residue({t}, cone, ray) == Scalar(Rat(0), Rat(3, 2)));
}
