#ifndef LOCRES_RATIONAL_HPP
#define LOCRES_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace locres {

using Rat = mpq_class;
using Int = mpz_class;
using RatVec = std::vector<Rat>;

inline int sgn(const Rat& q) { return sgn(q.get_num()); }

Rat rat_from_string(const std::string& s); // accepts "p", "p/q", "-p/q"
std::string rat_to_string(const Rat& q);

Rat rat_pow(const Rat& q, long e); // e may be negative for nonzero q

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);
Int double_factorial_odd(unsigned k); // (2k-1)!! with (-1)!! = 1

} // namespace locres

#endif
