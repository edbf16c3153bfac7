#include "sbp/lfun.hpp"

#include <algorithm>
#include <cmath>

namespace sbp::lfun {

std::vector<cplx> EulerFactor::reciprocal_roots() const {
    // roots of the reversed polynomial: alpha with poly = prod (1 - alpha X)
    int n = degree();
    std::vector<cplx> z(n);
    for (int i = 0; i < n; ++i) z[i] = std::pow(cplx(0.4, 0.9), double(i)) * 2.0;
    // monic polynomial with roots alpha: X^n + (c1/c0)...: reversed
    std::vector<cplx> m(n + 1);
    for (int i = 0; i <= n; ++i) m[i] = c[size_t(i)] * ((i % 2) ? -1.0 : 1.0);
    // roots of sum_i m_i X^i ... use relation: prod(1 - a X) => a are roots of
    // X^n * poly(1/X) = sum_i c_i (-1)^i ... simpler: Durand-Kerner on q(X) = X^n poly(1/X)
    std::vector<cplx> q(n + 1);
    for (int i = 0; i <= n; ++i) q[i] = c[size_t(n - i)];
    // now roots of q (monic up to c[n]... normalize by q[0]? q is degree n with q[0] = c[n])
    // normalize leading coefficient
    cplx lead = q[0];
    (void)lead;
    // Durand-Kerner on p(X) = sum_{i=0}^n q[i] X^{n-i} (q[0] leading)
    auto eval = [&](cplx x) {
        cplx v = 0;
        for (int i = 0; i <= n; ++i) v = v * x + q[i];
        return v;
    };
    for (int it = 0; it < 3000; ++it) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            cplx den = q[0];
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            cplx step = eval(z[i]) / den;
            z[i] -= step;
            moved += std::abs(step);
        }
        if (moved < 1e-14) break;
    }
    (void)m;
    return z;
}

EulerFactor factor_from_roots(long long p, const std::vector<cplx>& roots) {
    EulerFactor f;
    f.p = p;
    f.c.assign(roots.size() + 1, cplx(0, 0));
    f.c[0] = 1;
    std::vector<cplx> cur = {cplx(1, 0)};
    for (const cplx& r : roots) {
        std::vector<cplx> nxt(cur.size() + 1, cplx(0, 0));
        for (size_t i = 0; i < cur.size(); ++i) {
            nxt[i] += cur[i];
            nxt[i + 1] -= cur[i] * r;
        }
        cur = std::move(nxt);
    }
    f.c = cur;
    return f;
}

std::vector<Rat> spinor_factor_arithmetic(const Rat& lam_p, const Rat& lam_p2, int k, int r,
                                          long long p) {
    int w = 2 * k + 2 * r - 3;  // motivic weight
    std::vector<Rat> c(5);
    c[0] = 1;
    c[1] = -lam_p;
    c[2] = lam_p * lam_p - lam_p2 - rpow(Rat(p), w - 1);
    c[3] = -lam_p * rpow(Rat(p), w);
    c[4] = rpow(Rat(p), 2 * w);
    return c;
}

EulerFactor spinor_factor(const Rat& lam_p, const Rat& lam_p2, int k, int r, long long p) {
    auto arith = spinor_factor_arithmetic(lam_p, lam_p2, k, r, p);
    int w = 2 * k + 2 * r - 3;
    EulerFactor f;
    f.p = p;
    f.c.resize(5);
    double ps = std::pow(double(p), -0.5 * w);
    double scale = 1;
    for (int i = 0; i <= 4; ++i) {
        f.c[size_t(i)] = to_cplx(arith[size_t(i)]) * scale;
        scale *= ps;
    }
    return f;
}

EulerFactor gl2_factor(cplx a_p, int kappa, long long p, long long level) {
    EulerFactor f;
    f.p = p;
    double ps = std::pow(double(p), -0.5 * (kappa - 1));
    if (level % p == 0) {
        f.c = {cplx(1, 0), -a_p * ps};
    } else {
        f.c = {cplx(1, 0), -a_p * ps, cplx(std::pow(double(p), 0.0), 0)};
        f.c[2] = cplx(1, 0);  // unitary: 1 - a_p p^{-1/2-s'} + p^{-2s'}
    }
    return f;
}

EulerFactor tensor_factor(const EulerFactor& spin, const EulerFactor& gl2) {
    if (spin.degree() != 4 || gl2.degree() > 2)
        throw std::domain_error("tensor_factor: need degrees 4 and <= 2");
    auto a = spin.reciprocal_roots();
    auto b = gl2.reciprocal_roots();
    std::vector<cplx> prod;
    for (const cplx& x : a)
        for (const cplx& y : b) prod.push_back(x * y);
    return factor_from_roots(spin.p, prod);
}

EulerFactor adjoint_factor(const EulerFactor& spin) {
    if (spin.degree() != 4) throw std::domain_error("adjoint_factor: degree-4 input required");
    auto s = spin.reciprocal_roots();
    // GSp4 Satake symmetry: some pairing s_a s_b = s_c s_d = mu (the similitude)
    static const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    int best = -1;
    double bestd = 1e18;
    for (int i = 0; i < 3; ++i) {
        double d = std::abs(s[pairings[i][0]] * s[pairings[i][1]] -
                            s[pairings[i][2]] * s[pairings[i][3]]);
        if (d < bestd) { bestd = d; best = i; }
    }
    double scale = std::abs(s[0] * s[1] * s[2] * s[3]);
    if (bestd > 1e-4 * (1 + scale))
        throw std::domain_error("adjoint_factor: Satake symmetry violated");
    cplx s1 = s[pairings[best][0]], s4 = s[pairings[best][1]];
    cplx s2 = s[pairings[best][2]], s3 = s[pairings[best][3]];
    cplx mu = (s1 * s4 + s2 * s3) * 0.5;
    // SO(5) standard parameters {u, v, 1, 1/v, 1/u}
    cplx u = s1 * s2 / mu, v = s1 / s2;
    (void)s3;
    std::vector<cplx> std5 = {u, v, cplx(1, 0), 1.0 / v, 1.0 / u};
    std::vector<cplx> ad;
    for (int x = 0; x < 5; ++x)
        for (int y = x + 1; y < 5; ++y) ad.push_back(std5[size_t(x)] * std5[size_t(y)]);
    return factor_from_roots(spin.p, ad);
}

ThetaForm ai_theta(const qf::ClassGroup& G, const qf::ClassCharacter& Lambda, long long M,
                   int char_index) {
    ThetaForm T;
    T.D = G.disc.D;
    T.char_index = char_index;
    T.cuspidal = Lambda.order() > 1;
    T.a.assign(M + 1, cplx(0, 0));
    int w = G.wE();
    for (int c = 0; c < G.h(); ++c) {
        const qf::BQF& f = G.reduced[c];
        cplx z = Lambda.values[size_t(c)].value();
        // representation counts of the class-c reduced form
        // enumerate f(x, y) = a x^2 + b x y + c y^2 <= M
        long long xlim = isqrtll(4 * f.c * M / (4 * f.a * f.c - f.b * f.b)) + 1;
        for (long long x = -xlim; x <= xlim; ++x) {
            // solve range of y: f(x,y) <= M
            // c y^2 + b x y + a x^2 - M <= 0
            double disc = double(f.b) * f.b * x * x - 4.0 * f.c * (double(f.a) * x * x - M);
            if (disc < 0) continue;
            long long y0 = (long long)std::floor((-double(f.b) * x - std::sqrt(disc)) / (2.0 * f.c)) - 1;
            long long y1 = (long long)std::ceil((-double(f.b) * x + std::sqrt(disc)) / (2.0 * f.c)) + 1;
            for (long long y = y0; y <= y1; ++y) {
                long long n = f.a * x * x + f.b * x * y + f.c * y * y;
                if (n >= 1 && n <= M) T.a[size_t(n)] += z;
            }
        }
    }
    for (auto& x : T.a) x /= double(w);
    return T;
}

double GammaConstant::value() const {
    return to_double(rational) * std::pow(2 * 3.14159265358979323846, two_pi_pow);
}

std::pair<GammaConstant, GammaConstant> gamma_constants(int k, int r) {
    if (k < 2) throw std::domain_error("gamma_constants: k >= 2");
    GammaConstant center, adjoint;
    center.rational = Rat(16) * Rat(factorial(unsigned(k + r - 2)) * factorial(unsigned(k + r - 2))) *
                      Rat(factorial(unsigned(r)) * factorial(unsigned(r)));
    center.two_pi_pow = -2 * (k + r);
    adjoint.rational = Rat(64) * Rat(factorial(unsigned(k + 2 * r - 1))) *
                       Rat(factorial(unsigned(k - 2))) * Rat(factorial(unsigned(2 * r + 1))) *
                       Rat(factorial(unsigned(2 * k + 2 * r - 3)));
    adjoint.two_pi_pow = -(4 * k + 6 * r + 1);
    return {center, adjoint};
}

Rat jp_factor(long long p, const std::string& type) {
    Rat base = (1 + rpow(Rat(p), -2)) * (1 + rpow(Rat(p), -1));
    if (type == "IIIa") return base;
    if (type == "VIb") return 2 * base;
    if (type == "other") return Rat(0);
    throw std::domain_error("jp_factor: unknown local type label");
}

double dirichlet_L1(long long D) {
    // L(1, chi) = -(1/f) sum_{a=1}^{f-1} chi(a) psi(a/f), f = D
    double s = 0;
    for (long long a = 1; a < D; ++a) {
        int chi = kronecker_symbol(Int(-D), Int(a));
        if (chi == 0) continue;
        s += chi * digamma(double(a) / double(D));
    }
    return -s / double(D);
}

void CoeffStream::build(long long N) {
    a.assign(N + 1, cplx(0, 0));
    known.assign(N + 1, true);
    a[1] = 1;
    // prime powers from local factors: a_{p^j} coefficients of 1/poly
    std::vector<long long> primes;
    for (long long n = 2; n <= N; ++n) {
        bool is_p = true;
        for (long long d = 2; d * d <= n; ++d)
            if (n % d == 0) { is_p = false; break; }
        if (is_p) primes.push_back(n);
    }
    std::map<long long, std::vector<cplx>> pp;  // p -> a_{p^j}
    for (long long p : primes) {
        int maxj = 0;
        long long q = 1;
        while (q <= N / p) { q *= p; ++maxj; }
        std::vector<cplx> v(maxj + 1, cplx(0, 0));
        v[0] = 1;
        auto it = local.find(p);
        if (it == local.end()) {
            pp[p] = v;  // unknown beyond j = 0
            continue;
        }
        const auto& c = it->second.c;
        for (int j = 1; j <= maxj; ++j) {
            cplx s = 0;
            for (int i = 1; i < (int)c.size() && i <= j; ++i) s -= c[size_t(i)] * v[size_t(j - i)];
            v[size_t(j)] = s;
        }
        pp[p] = v;
    }
    for (long long n = 2; n <= N; ++n) {
        cplx val = 1;
        bool ok = true;
        long long m = n;
        for (long long p : primes) {
            if (p * p > m && m > 1) {
                // m is prime
                if (local.count(m)) {
                    val *= pp[m][1];
                } else
                    ok = false;
                m = 1;
                break;
            }
            if (m % p == 0) {
                int j = 0;
                while (m % p == 0) { m /= p; ++j; }
                if (!local.count(p) || (int)pp[p].size() <= j)
                    ok = false;
                else
                    val *= pp[p][size_t(j)];
            }
            if (m == 1) break;
        }
        a[size_t(n)] = ok ? val : cplx(0, 0);
        known[size_t(n)] = ok;
    }
}

} // namespace sbp::lfun
