#ifndef LOCRES_LAURENT_HPP
#define LOCRES_LAURENT_HPP

#include "locres/scalar.hpp"

#include <vector>

namespace locres {

/// Truncated one-variable Laurent series.  Coefficients run from min_deg up
/// to trunc inclusive and are exact; asking for a coefficient above trunc is
/// an error, never a silent zero.
class LaurentSeries1D {
  public:
    LaurentSeries1D() : min_deg_(0), trunc_(-1) {}
    LaurentSeries1D(long min_deg, long trunc)
        : min_deg_(min_deg), trunc_(trunc),
          c_(trunc >= min_deg ? trunc - min_deg + 1 : 0) {}

    long min_deg() const { return min_deg_; }
    long trunc() const { return trunc_; }

    Scalar& at(long k) { return c_[k - min_deg_]; }
    const Scalar& at(long k) const { return c_[k - min_deg_]; }

    Scalar coefficient(long k) const; // exact; see laurent_coefficient

    LaurentSeries1D& operator+=(const LaurentSeries1D& o);
    LaurentSeries1D& operator*=(const Scalar& s);
    friend LaurentSeries1D operator+(LaurentSeries1D a, const LaurentSeries1D& b) {
        return a += b;
    }

    /// Multiply by the monomial x^k (shifts degrees).
    LaurentSeries1D shifted(long k) const;

  private:
    long min_deg_, trunc_;
    std::vector<Scalar> c_;
};

/// Series of c * e^{i mu x} / x^pole_order, exact through degree trunc.
LaurentSeries1D series_of_term(const Scalar& c, const Rat& mu, long pole_order, long trunc);

/// Exact coefficient extraction; throws "insufficient truncation" past trunc,
/// returns 0 below min_deg.
Scalar laurent_coefficient(const LaurentSeries1D& s, long k);

} // namespace locres

#endif
