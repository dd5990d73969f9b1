#ifndef LOCRES_RESIDUE_HPP
#define LOCRES_RESIDUE_HPP

#include "locres/linear_form.hpp"
#include "locres/multipoly.hpp"
#include "locres/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace locres {

/// numerator(psi) * e^{i lambda(psi)} / prod_j beta_j(psi)^{n_j}
struct MeromorphicTerm {
    MultiPoly numerator;                              // in psi_1..psi_l
    std::vector<std::pair<LinearForm, unsigned>> denominator; // nonzero forms, power >= 1
    LinearForm exponent;                              // lambda

    std::size_t dim() const { return exponent.dim(); }
    void validate() const;
};

/// Proper cone Lambda in the torus Lie algebra, described by spanning
/// generators together with an explicit interior point.
struct ConeSpec {
    std::vector<RatVec> generators;
    RatVec interior_point;

    static ConeSpec positive_orthant(std::size_t l);
    static ConeSpec ray(RatVec xi); // one-generator cone along xi

    std::size_t dim() const { return interior_point.size(); }
    void validate() const; // properness (no line) and interior consistency
};

/// Tie-breaking direction rho of Definition-8.7 type regularization.
struct RaySpec {
    LinearForm rho;

    static RaySpec standard(std::size_t l); // deterministic generic-ish default
    /// rho not in any cone spanned by fewer than l of the given forms.
    bool is_generic_for(const std::vector<MeromorphicTerm>& terms) const;
};

/// Rank-1 residue: the coefficient of 1/psi for mu > 0, exactly 0 for mu < 0
/// or for pole-free terms; mu = 0 with a genuine pole is rejected.
Scalar residue_rank1(const MeromorphicTerm& term);

/// Every denominator form of every term sign-definite on Int(Lambda).
bool admissible(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone);

/// Sign of f on Int(Lambda): +1 or -1 when sign-definite, 0 otherwise.
int cone_sign(const LinearForm& f, const ConeSpec& cone);

/// Iterated residue of a sum of meromorphic terms over the cone Lambda with
/// ray regularization.  Evaluated by one-variable contour elimination; the
/// 1/(2 pi i)^l normalization is included (it cancels exactly against the l
/// contour extractions, so the result carries no pi ledger).
///
/// `order` optionally fixes the variable elimination order (a permutation of
/// 0..l-1); the result is order-independent for admissible inputs.
Scalar jk_residue(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone,
                  const RaySpec& ray, const std::vector<std::size_t>* order = nullptr);

/// The s -> 0+ limit of the residue with exponents s*lambda: the exponential
/// scale is sent to zero while its direction still selects every contour.
Scalar jk_residue_limit(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone,
                        const std::vector<std::size_t>* order = nullptr);

/// Independent second algorithm: evaluate each term by differentiating the
/// cone function H of its denominator system and reading the chamber that
/// contains lambda (ray side on walls).  Equal to jk_residue after the
/// engine-wide calibration; exists for cross-validation.
Scalar jk_residue_via_h(const std::vector<MeromorphicTerm>& terms, const ConeSpec& cone,
                        const RaySpec& ray);

/// Calibration constant linking jk_residue_via_h's cone-function route to
/// jk_residue, fixed once on the N = l system of Kronecker forms: the
/// residue equals unit * i^(N-l) * (d/dlambda-route value).
extern const Scalar kViaHUnit;

} // namespace locres

#endif
