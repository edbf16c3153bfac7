#ifndef SBP_NUMERIC_HPP
#define SBP_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sbp {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using cplx = std::complex<double>;

inline Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat rpow(const Rat& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rpow: 0^negative");
        Rat inv = Rat(denominator(base), numerator(base));
        return rpow(inv, -e);
    }
    Rat r = 1, b = base;
    unsigned long ee = static_cast<unsigned long>(e);
    while (ee) {
        if (ee & 1) r *= b;
        b *= b;
        ee >>= 1;
    }
    return r;
}

long long gcdll(long long a, long long b);
long long isqrtll(long long n);   // floor(sqrt(n)), n >= 0

// Kronecker symbol (a|n), full Z x Z domain, (a|0) = [a = +-1].
int kronecker_symbol(Int a, Int n);

bool is_prime_u32(uint32_t n);
std::vector<uint32_t> primes_up_to(uint32_t n);
// factorization of n > 0 as (prime, exponent) pairs, trial division
std::vector<std::pair<long long, int>> factor_ll(long long n);

// Bernoulli number B_n (B_1 = -1/2 convention)
Rat bernoulli(unsigned n);
// Bernoulli polynomial B_n(x)
Rat bernoulli_poly(unsigned n, const Rat& x);
Rat rat_binomial(unsigned n, unsigned k);
Int factorial(unsigned n);

double to_double(const Rat& q);
cplx to_cplx(const Rat& q);

// digamma for real x > 0, ~1e-14 accuracy
double digamma(double x);
// log Gamma(z), principal branch, Re z unrestricted (reflection applied)
cplx log_gamma(cplx z);

} // namespace sbp

#endif
