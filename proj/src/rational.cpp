#include "locres/rational.hpp"

#include "locres/errors.hpp"

namespace locres {

Rat rat_from_string(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw parse_error("empty rational literal");
    try {
        Rat q(t);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw parse_error("malformed rational literal '" + s + "'");
    }
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0 && e < 0) throw algebra_error("rat_pow: zero to negative power");
    Rat base = e > 0 ? q : Rat(1) / q;
    unsigned long n = e > 0 ? e : -e;
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

Int factorial(unsigned n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

Int binomial(unsigned n, unsigned k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Int double_factorial_odd(unsigned k) {
    if (k == 0) return Int(1);
    Int f;
    mpz_2fac_ui(f.get_mpz_t(), 2 * k - 1);
    return f;
}

} // namespace locres
