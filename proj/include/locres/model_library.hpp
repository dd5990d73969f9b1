#ifndef LOCRES_MODEL_LIBRARY_HPP
#define LOCRES_MODEL_LIBRARY_HPP

#include "locres/model.hpp"
#include "locres/residue.hpp"

#include <set>
#include <string>
#include <vector>

namespace locres {

/// SU(2) acting diagonally on the N-fold product of spheres, N odd.  2^N
/// isolated fixed points indexed by sign vectors, streamed on demand.
LocalizationModel build_p1_power(unsigned n);

/// SU(2) on complex projective N-space via the N-th symmetric power, N odd.
/// Fixed points e_0..e_N with moment images N - 2k and weights 2(j - k).
LocalizationModel build_projective_space(unsigned n);

/// Sign vector of the k-th fixed point of the product-of-spheres model.
std::vector<int> p1_power_signs(unsigned n, std::size_t index);

/// Restriction of a polynomial in xi_1..xi_N, alpha to the fixed points of
/// the product model: xi_j -> n_j psi, alpha -> psi.
ClassFunction restrict_class_example1(unsigned n, const MultiPoly& expr);

/// Restriction of a polynomial in xi, alpha to the fixed points of the
/// projective model: xi -> (N - 2k) psi, alpha -> psi.
ClassFunction restrict_class_example2(unsigned n, const MultiPoly& expr);

/// Kernel generator (q * prod_{i in Q}(xi_i + alpha) - q|_{alpha -> -alpha}
/// * prod(xi_i - alpha)) / alpha as a polynomial in xi_1..xi_N, alpha.
/// Requires |Q| >= (N+1)/2; the division by alpha is exact and checked.
MultiPoly relation_generator_example1(unsigned n, const std::set<unsigned>& q_set,
                                      const MultiPoly& q);

/// The pair (P_plus, P_minus / alpha) of kernel generators of the projective
/// model, both polynomials in xi and alpha^2 (variables xi, alpha).
std::pair<MultiPoly, MultiPoly> relation_generators_example2(unsigned n);

/// sum_{k=0}^{r} k^s (-1)^k binom(r, k); vanishes for s <= r - 2.
Scalar binomial_vanishing(unsigned r, unsigned s);

/// The single meromorphic term e^{i lambda(psi)} / (psi1 psi2 (psi1+psi2)).
std::vector<MeromorphicTerm> build_su3_example_terms(const LinearForm& lambda);

/// The same data wrapped as a rank-2 abelian model with one fixed point at
/// moment image lambda.
LocalizationModel build_su3_demo_model(const LinearForm& lambda);

/// One relation-pairing check: which kernel element, and its pairing value
/// (zero when the relation really lies in the kernel).
struct RelationCheck {
    std::string description;
    Scalar value;
};

/// Every kernel generator of the product model whose degree matches
/// dim X_red / 2: all subsets Q with |Q| >= (N+1)/2 and all monomials q with
/// deg q + |Q| - 1 = N - 3, paired exactly.
std::vector<RelationCheck> verify_example1(unsigned n, unsigned threads = 0);

/// Degree-matched multiples R * P_plus and R * P_minus/alpha of the
/// projective model's kernel generators, paired exactly over monomial R.
std::vector<RelationCheck> verify_example2(unsigned n);

/// Preset parser for the CLI: "p1pow:N", "projN:N", "su3demo".
LocalizationModel build_preset(const std::string& name);

/// Variable names a preset's class expressions are written in.
std::vector<std::string> preset_class_variables(const std::string& name);

/// Restriction rule for a preset class expression.
ClassFunction preset_class_function(const std::string& name, const MultiPoly& expr);

} // namespace locres

#endif
