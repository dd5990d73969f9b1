#ifndef LOCRES_SCALAR_HPP
#define LOCRES_SCALAR_HPP

#include "locres/errors.hpp"
#include "locres/rational.hpp"

#include <iosfwd>
#include <string>

namespace locres {

/// Exact Gaussian-rational scalar with a power-of-pi ledger.
///
/// Value = (re + i*im) * pi^pi_exp.  i is a ring element (i*i = -1), pi is a
/// free transcendental tracked only through its integer exponent.  Adding two
/// nonzero scalars with different pi exponents is an error, never a silent
/// coercion; the exact zero is pi-neutral and compatible with any exponent.
class Scalar {
  public:
    Scalar() : re_(0), im_(0), pi_(0) {}
    Scalar(long n) : re_(n), im_(0), pi_(0) { normalize(); }
    Scalar(const Rat& re) : re_(re), im_(0), pi_(0) {
        re_.canonicalize();
        normalize();
    }
    Scalar(Rat re, Rat im, int pi_exp = 0)
        : re_(std::move(re)), im_(std::move(im)), pi_(pi_exp) {
        re_.canonicalize();
        im_.canonicalize();
        normalize();
    }

    static Scalar i() { return Scalar(Rat(0), Rat(1)); }
    static Scalar i_pow(long k);            // i^k, k may be negative
    static Scalar pi_power(int k) { return Scalar(Rat(1), Rat(0), k); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }
    int pi_exp() const { return pi_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real_rational() const { return im_ == 0 && pi_ == 0; }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(-re_, -im_, pi_); }

    Scalar inv() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const {
        return re_ == o.re_ && im_ == o.im_ && pi_ == o.pi_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const; // lexicographic, for ordered maps

    /// Numeric value with pi substituted; exact rationals converted to double.
    double to_double_real() const;
    double to_double_imag() const;

    std::string to_string() const; // "a/b + c/d i" with explicit "pi^k"

  private:
    void normalize() {
        if (re_ == 0 && im_ == 0) pi_ = 0;
    }

    Rat re_, im_;
    int pi_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace locres

#endif
