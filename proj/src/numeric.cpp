#include "sbp/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace sbp {

long long gcdll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long isqrtll(long long n) {
    if (n < 0) throw std::domain_error("isqrtll: negative");
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

int kronecker_symbol(Int a, Int n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        // (a|2) = 0,1,-1 per a mod 8
        while (n % 2 == 0) {
            n /= 2;
            Int m = ((a % 8) + 8) % 8;
            if (m == 3 || m == 5) sign = -sign;
        }
    }
    // now n odd positive; use mpz_jacobi
    a %= n;
    if (a < 0) a += n;
    int j = mpz_jacobi(a.backend().data(), n.backend().data());
    return sign * j;
}

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 32-bit
    auto mulmod = [](uint64_t x, uint64_t y, uint64_t m) { return (__uint128_t)x * y % m; };
    auto powmod = [&](uint64_t b, uint64_t e, uint64_t m) {
        uint64_t r = 1;
        b %= m;
        while (e) {
            if (e & 1) r = mulmod(r, b, m);
            b = mulmod(b, b, m);
            e >>= 1;
        }
        return r;
    };
    uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    for (uint64_t a : {2ull, 7ull, 61ull}) {
        if (a % n == 0) continue;
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<uint32_t> primes_up_to(uint32_t n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<uint32_t> out;
    for (uint32_t i = 2; i <= n; ++i) {
        if (sieve[i]) {
            out.push_back(i);
            for (uint64_t j = (uint64_t)i * i; j <= n; j += i) sieve[j] = false;
        }
    }
    return out;
}

std::vector<std::pair<long long, int>> factor_ll(long long n) {
    if (n <= 0) throw std::domain_error("factor_ll: n must be positive");
    std::vector<std::pair<long long, int>> f;
    for (long long p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

Rat bernoulli(unsigned n) {
    static std::vector<Rat> cache;  // computed via the Akiyama-Tanigawa style recurrence
    if (n < cache.size()) return cache[n];
    // B_m = -sum_{j<m} C(m+1, j) B_j / (m+1)
    size_t start = cache.size();
    if (start == 0) { cache.push_back(1); start = 1; }
    for (size_t m = start; m <= n; ++m) {
        Rat s = 0;
        for (size_t j = 0; j < m; ++j)
            s += rat_binomial(static_cast<unsigned>(m + 1), static_cast<unsigned>(j)) * cache[j];
        cache.push_back(-s / Rat(m + 1));
    }
    return cache[n];
}

Rat bernoulli_poly(unsigned n, const Rat& x) {
    Rat s = 0;
    for (unsigned k = 0; k <= n; ++k)
        s += rat_binomial(n, k) * bernoulli(k) * rpow(x, n - k);
    return s;
}

Rat rat_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return Rat(num, den);
}

Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

double to_double(const Rat& q) {
    return q.convert_to<double>();
}

cplx to_cplx(const Rat& q) { return cplx(to_double(q), 0.0); }

double digamma(double x) {
    if (x <= 0) throw std::domain_error("digamma: need x > 0");
    double r = 0;
    while (x < 12) {
        r -= 1.0 / x;
        x += 1;
    }
    // asymptotic series
    double inv = 1.0 / x, inv2 = inv * inv;
    double s = std::log(x) - 0.5 * inv;
    static const double c[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                               1.0 / 132, -691.0 / 32760, 1.0 / 12};
    double t = inv2;
    for (double ci : c) {
        s -= ci * t;
        t *= inv2;
    }
    return r + s;
}

cplx log_gamma(cplx z) {
    // Lanczos, g = 7, 9 coefficients
    static const double lg[] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection
        const double pi = 3.14159265358979323846;
        return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = lg[0];
    for (int i = 1; i < 9; ++i) x += lg[i] / (z + cplx(i, 0));
    cplx t = z + 7.5;
    const double half_log_2pi = 0.91893853320467274178;
    return half_log_2pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace sbp
