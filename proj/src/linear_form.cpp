#include "locres/linear_form.hpp"

#include "locres/errors.hpp"

#include <ostream>
#include <sstream>

namespace locres {

bool LinearForm::is_zero() const {
    for (const Rat& q : c_)
        if (q != 0) return false;
    return true;
}

Rat LinearForm::pair(const RatVec& v) const {
    if (v.size() != c_.size()) throw algebra_error("linear form pairing: dimension mismatch");
    Rat s(0);
    for (std::size_t k = 0; k < c_.size(); ++k) s += c_[k] * v[k];
    return s;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    if (o.dim() != dim()) throw algebra_error("linear form addition: dimension mismatch");
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
    if (o.dim() != dim()) throw algebra_error("linear form subtraction: dimension mismatch");
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

LinearForm& LinearForm::operator*=(const Rat& q) {
    for (Rat& x : c_) x *= q;
    return *this;
}

LinearForm LinearForm::operator-() const {
    LinearForm f(*this);
    for (Rat& x : f.c_) x = -x;
    return f;
}

LinearForm LinearForm::drop(std::size_t k) const {
    LinearForm f;
    f.c_.reserve(c_.size() - 1);
    for (std::size_t j = 0; j < c_.size(); ++j)
        if (j != k) f.c_.push_back(c_[j]);
    return f;
}

LinearForm LinearForm::primitive() const {
    if (is_zero()) return *this;
    Int num_gcd(0), den_lcm(1);
    for (const Rat& q : c_) {
        if (q == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    }
    Rat scale = Rat(den_lcm) / Rat(num_gcd);
    LinearForm f(*this);
    f *= scale;
    for (const Rat& q : f.c_) {
        if (q != 0) {
            if (sgn(q) < 0) f *= Rat(-1);
            break;
        }
    }
    return f;
}

std::string LinearForm::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        Rat a = abs(c_[k]);
        if (first) {
            if (sgn(c_[k]) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c_[k]) < 0 ? " - " : " + ");
        }
        if (a != 1) os << rat_to_string(a) << "*";
        os << var << (k + 1);
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LinearForm& f) {
    return os << f.to_string();
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw algebra_error("dot: dimension mismatch");
    Rat s(0);
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

} // namespace locres
