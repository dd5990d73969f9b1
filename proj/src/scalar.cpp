#include "locres/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace locres {

Scalar Scalar::i_pow(long k) {
    long r = ((k % 4) + 4) % 4;
    switch (r) {
        case 0: return Scalar(Rat(1), Rat(0));
        case 1: return Scalar(Rat(0), Rat(1));
        case 2: return Scalar(Rat(-1), Rat(0));
        default: return Scalar(Rat(0), Rat(-1));
    }
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (pi_ != o.pi_)
        throw algebra_error("scalar addition across different powers of pi (pi^" +
                            std::to_string(pi_) + " vs pi^" + std::to_string(o.pi_) + ")");
    re_ += o.re_;
    im_ += o.im_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    Rat r = re_ * o.re_ - im_ * o.im_;
    Rat i = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    im_ = i;
    pi_ += o.pi_;
    normalize();
    return *this;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw algebra_error("division by zero scalar");
    Rat n = re_ * re_ + im_ * im_;
    return Scalar(re_ / n, -im_ / n, -pi_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

Scalar Scalar::pow(long e) const {
    if (e == 0) return Scalar(1);
    Scalar base = e > 0 ? *this : inv();
    unsigned long n = e > 0 ? e : -e;
    Scalar acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

bool Scalar::operator<(const Scalar& o) const {
    if (pi_ != o.pi_) return pi_ < o.pi_;
    if (re_ != o.re_) return re_ < o.re_;
    return im_ < o.im_;
}

double Scalar::to_double_real() const {
    return re_.get_d() * std::pow(M_PI, pi_);
}

double Scalar::to_double_imag() const {
    return im_.get_d() * std::pow(M_PI, pi_);
}

std::string Scalar::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.is_zero()) return os << "0";
    bool have_re = s.re() != 0, have_im = s.im() != 0;
    std::ostringstream body;
    if (have_re) body << rat_to_string(s.re());
    if (have_im) {
        if (have_re) body << (sgn(s.im()) >= 0 ? " + " : " - ");
        else if (sgn(s.im()) < 0) body << "-";
        Rat a = abs(s.im());
        if (a != 1) body << rat_to_string(a) << " ";
        body << "i";
    }
    if (s.pi_exp() == 0) return os << body.str();
    if (have_re && have_im) os << "(" << body.str() << ")";
    else os << body.str();
    return os << " pi^" << s.pi_exp();
}

} // namespace locres
