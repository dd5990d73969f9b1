#ifndef LOCRES_GAUSSIAN_HPP
#define LOCRES_GAUSSIAN_HPP

#include "locres/multipoly.hpp"
#include "locres/piecewise.hpp"
#include "locres/scalar.hpp"

#include <map>
#include <string>

namespace locres {

/// (re + i im) * (2 pi)^(two_pi_half / 2): Gaussian-moment values need
/// half-integer powers of 2*pi, which the plain Scalar ledger cannot carry.
struct GaussScalar {
    Rat re{0}, im{0};
    int two_pi_half{0};

    static GaussScalar from_scalar(const Scalar& s);
    bool is_zero() const { return re == 0 && im == 0; }

    GaussScalar& operator*=(const GaussScalar& o);
    GaussScalar& operator+=(const GaussScalar& o); // equal powers or zero
    friend GaussScalar operator*(GaussScalar a, const GaussScalar& b) { return a *= b; }
    friend GaussScalar operator+(GaussScalar a, const GaussScalar& b) { return a += b; }
    bool operator==(const GaussScalar& o) const;
    std::string to_string() const;
    double to_double_real() const;
    double to_double_imag() const;
};

/// Finite sum  sum_k c_k * eps^(k/2)  with GaussScalar coefficients; the map
/// key is 2 * (epsilon exponent).
class GaussianValue {
  public:
    std::map<int, GaussScalar>& terms() { return terms_; }
    const std::map<int, GaussScalar>& terms() const { return terms_; }

    void add(int eps_half, const GaussScalar& c);
    GaussScalar term(int eps_half) const; // zero when absent

    GaussianValue& operator+=(const GaussianValue& o);
    GaussianValue& operator*=(const GaussScalar& c);
    void shift_eps(int eps_half_delta);
    bool operator==(const GaussianValue& o) const { return terms_ == o.terms_; }

    std::string to_string() const;

  private:
    std::map<int, GaussScalar> terms_;
};

/// Exact Gaussian integral over R^l of e^{-|y|^2 / (2 eps)} p(y) [dy]; the
/// epsilon dependence is kept symbolic (odd moments vanish, even moment 2k
/// contributes (2k-1)!! eps^k, each coordinate one factor sqrt(2 pi eps)).
GaussianValue gaussian_integral_polynomial(const MultiPoly& p);

/// Numeric rank-1 layer: integral over the piece intervals of
/// e^{-y^2/(2 eps)} p(y) dy in double precision (error-function quadrature).
double gaussian_integral_piecewise_rank1(const PiecewisePolynomial& p, double eps);

} // namespace locres

#endif
