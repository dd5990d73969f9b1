#ifndef LOCRES_PAIRINGS_HPP
#define LOCRES_PAIRINGS_HPP

#include "locres/gaussian.hpp"
#include "locres/model.hpp"
#include "locres/piecewise.hpp"
#include "locres/residue.hpp"

#include <map>
#include <vector>

namespace locres {

/// Localization summands: one meromorphic term per fixed point per class
/// term, with exponent mu_T(F) when the symplectic exponential is kept.
std::vector<MeromorphicTerm> pushforward_terms(const LocalizationModel& m,
                                               const ClassFunction& eta,
                                               bool with_symplectic_exponent);

/// Rank-1 pairing eta_0 e^{i omega_0}[X_red] in the unit-volume normalization:
/// -1/2 times the 1/psi coefficient of psi^2 * sum over mu > 0 summands.
/// Exact; parallel over fixed points (threads = 0 picks the hardware count).
Scalar pairing_rank1(const LocalizationModel& m, const ClassFunction& eta,
                     unsigned threads = 0);

/// General pairing via the iterated residue over an admissible cone.
Scalar pairing_general(const LocalizationModel& m, const ClassFunction& eta,
                       const ConeSpec& cone, const RaySpec& ray);

/// Coefficients of eps^m, m = 0..order, of the pairing against e^{eps Theta}:
/// each term carries the extra numerator (-|psi|^2/2)^m / m!.
std::map<unsigned, Scalar> pairing_with_theta(const LocalizationModel& m,
                                              const ClassFunction& eta, unsigned order,
                                              const ConeSpec* cone = nullptr,
                                              const RaySpec* ray = nullptr);

/// Duistermaat-Heckman density: the pushforward of the Liouville measure
/// under the torus moment map, assembled from shifted cone functions with the
/// flip signs of the chosen cone, then sign-calibrated to be nonnegative on
/// the chamber adjacent to the extreme moment image.  Requires constant class
/// data and real point integrals.
PiecewisePolynomial dh_function(const LocalizationModel& m, const ConeSpec& cone);

/// Q = varpi(y) * D_varpi R chamber-wise (D_varpi the product of i * root
/// directional derivatives; unit-volume normalization carries the 2*pi per
/// root on both factors).
PiecewisePolynomial witten_q(const LocalizationModel& m, const ConeSpec& cone);

struct CriticalValueSet {
    std::vector<std::pair<LinearForm, Rat>> betas; // (beta, |beta|^2), sorted by |beta|^2
    bool contains_zero() const;
};

/// Closest points to 0 of convex hulls of nonempty subsets of the moment
/// images, folded into the positive chamber.
CriticalValueSet critical_values(const LocalizationModel& m);

struct DecayPoint {
    double eps;
    double i_eps;
    double i_eps0;
    double diff; // |i_eps - i_eps0|
};

/// Numeric comparison of the Gaussian integrals of Q and of its germ at 0;
/// the data feed the exponential-decay slope fit.
std::vector<DecayPoint> witten_decay_check(const LocalizationModel& m,
                                           const std::vector<double>& eps_list);

/// Least-squares slope of log(diff) against -1/(2 eps).
double fit_decay_slope(const std::vector<DecayPoint>& points);

/// Exact Gaussian-path value I^eps_0: the germ of Q integrated against the
/// normalized Gaussian, all prefactors kept exactly (half powers of eps and
/// 2*pi symbolic).
GaussianValue ieps0_exact(const LocalizationModel& m, const ConeSpec& cone);

/// The engine-wide constant kappa with I^eps_0 = kappa * pairing-with-theta
/// term by term; fixed once on the N = 3 product-of-spheres model and frozen.
extern const GaussScalar kGaussianResidueCalibration;

} // namespace locres

#endif
