#ifndef LOCRES_LINEAR_FORM_HPP
#define LOCRES_LINEAR_FORM_HPP

#include "locres/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace locres {

/// Rational linear form on the rank-l torus Lie algebra (or, by duality, a
/// rational vector).  Length is fixed per engine instance.
class LinearForm {
  public:
    LinearForm() = default;
    explicit LinearForm(std::size_t l) : c_(l, Rat(0)) {}
    explicit LinearForm(RatVec coeffs) : c_(std::move(coeffs)) {
        for (Rat& q : c_) q.canonicalize();
    }

    static LinearForm unit(std::size_t l, std::size_t k) {
        LinearForm f(l);
        f.c_[k] = 1;
        return f;
    }

    std::size_t dim() const { return c_.size(); }
    const Rat& operator[](std::size_t k) const { return c_[k]; }
    Rat& operator[](std::size_t k) { return c_[k]; }
    const RatVec& coeffs() const { return c_; }

    bool is_zero() const;

    Rat pair(const RatVec& v) const; // <this, v>
    Rat pair(const LinearForm& v) const { return pair(v.coeffs()); }

    LinearForm& operator+=(const LinearForm& o);
    LinearForm& operator-=(const LinearForm& o);
    LinearForm& operator*=(const Rat& q);
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator*(const Rat& q, LinearForm f) { return f *= q; }
    LinearForm operator-() const;

    /// Form on one variable fewer, with coordinate k removed.
    LinearForm drop(std::size_t k) const;

    bool operator==(const LinearForm& o) const { return c_ == o.c_; }
    bool operator!=(const LinearForm& o) const { return c_ != o.c_; }
    bool operator<(const LinearForm& o) const { return c_ < o.c_; }

    /// Divide by the gcd of the coefficients and make the first nonzero one
    /// positive; returns the zero form unchanged.
    LinearForm primitive() const;

    std::string to_string(const std::string& var = "psi") const;

  private:
    RatVec c_;
};

std::ostream& operator<<(std::ostream& os, const LinearForm& f);

Rat dot(const RatVec& a, const RatVec& b);

} // namespace locres

#endif
