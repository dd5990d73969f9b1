#include "locres/laurent.hpp"

#include "locres/errors.hpp"

#include <algorithm>

namespace locres {

Scalar LaurentSeries1D::coefficient(long k) const {
    if (k > trunc_)
        throw algebra_error("insufficient truncation: coefficient " + std::to_string(k) +
                            " beyond truncation order " + std::to_string(trunc_));
    if (k < min_deg_) return Scalar();
    return c_[k - min_deg_];
}

LaurentSeries1D& LaurentSeries1D::operator+=(const LaurentSeries1D& o) {
    long lo = std::min(min_deg_, o.min_deg_);
    long hi = std::min(trunc_, o.trunc_); // truncation degrades to the coarser
    LaurentSeries1D out(lo, hi);
    for (long k = lo; k <= hi; ++k) {
        Scalar s;
        if (k >= min_deg_ && k <= trunc_) s += at(k);
        if (k >= o.min_deg_ && k <= o.trunc_) s += o.at(k);
        out.at(k) = s;
    }
    *this = std::move(out);
    return *this;
}

LaurentSeries1D& LaurentSeries1D::operator*=(const Scalar& s) {
    for (Scalar& x : c_) x *= s;
    return *this;
}

LaurentSeries1D LaurentSeries1D::shifted(long k) const {
    LaurentSeries1D out(min_deg_ + k, trunc_ + k);
    for (long j = min_deg_; j <= trunc_; ++j) out.at(j + k) = at(j);
    return out;
}

LaurentSeries1D series_of_term(const Scalar& c, const Rat& mu, long pole_order, long trunc) {
    if (trunc < 0) throw algebra_error("series_of_term: negative truncation order");
    LaurentSeries1D s(-pole_order, trunc);
    Scalar imu = Scalar::i() * Scalar(mu);
    Scalar term = c; // c*(i mu)^k / k!
    for (long k = 0; k - pole_order <= trunc; ++k) {
        if (k > 0) term = term * imu / Scalar(Rat(k));
        s.at(k - pole_order) = term;
        if (mu == 0 && k == 0) break; // e^{0} = 1 exactly, higher terms vanish
    }
    return s;
}

Scalar laurent_coefficient(const LaurentSeries1D& s, long k) { return s.coefficient(k); }

} // namespace locres
