#include "sbp/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace sbp::ell {

QExp eisenstein_q(int k, long long N) {
    QExp a(N + 1, Rat(0));
    a[0] = 1;
    Rat c = Rat(-2 * k) / bernoulli(k);
    for (long long n = 1; n <= N; ++n) {
        Int s = 0;
        for (long long d = 1; d <= n; ++d)
            if (n % d == 0) s += ipow(Int(d), k - 1);
        a[size_t(n)] = c * Rat(s);
    }
    return a;
}

QExp eisenstein2_level(long long p, long long N) {
    // E2(z) - p E2(pz); E2 = 1 - 24 sum sigma_1(n) q^n
    QExp a(N + 1, Rat(0));
    a[0] = 1 - p;
    for (long long n = 1; n <= N; ++n) {
        Int s = 0;
        for (long long d = 1; d <= n; ++d)
            if (n % d == 0) s += d;
        Rat v = Rat(-24) * Rat(s);
        a[size_t(n)] += v;
        if (n * p <= N) a[size_t(n * p)] -= Rat(p) * v;
    }
    return a;
}

static std::vector<Int> eta_power_q(long long N) {
    // prod (1 - q^n) via Euler's pentagonal number theorem
    std::vector<Int> f(N + 1, 0);
    f[0] = 1;
    for (long long j = 1;; ++j) {
        long long g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
        if (g1 > N && g2 > N) break;
        Int s = (j % 2) ? -1 : 1;
        if (g1 <= N) f[size_t(g1)] += s;
        if (g2 <= N) f[size_t(g2)] += s;
    }
    return f;
}

static std::vector<Int> ipow_series(const std::vector<Int>& a, int e, long long N) {
    std::vector<Int> r(N + 1, 0);
    r[0] = 1;
    std::vector<Int> base = a;
    int ee = e;
    while (ee) {
        if (ee & 1) {
            std::vector<Int> t(N + 1, 0);
            for (long long i = 0; i <= N; ++i) {
                if (r[size_t(i)] == 0) continue;
                for (long long j = 0; i + j <= N; ++j) {
                    if (base[size_t(j)] == 0) continue;
                    t[size_t(i + j)] += r[size_t(i)] * base[size_t(j)];
                }
            }
            r = std::move(t);
        }
        ee >>= 1;
        if (!ee) break;
        std::vector<Int> t(N + 1, 0);
        for (long long i = 0; i <= N; ++i) {
            if (base[size_t(i)] == 0) continue;
            for (long long j = i; i + j <= N; ++j) {
                if (base[size_t(j)] == 0) continue;
                Int pr = base[size_t(i)] * base[size_t(j)];
                t[size_t(i + j)] += (i == j) ? pr : 2 * pr;
            }
        }
        base = std::move(t);
    }
    return r;
}

QExp delta_q(long long N) {
    return eta_product({{1, 24}}, N);
}

QExp eta_product(const std::vector<std::pair<long long, int>>& factors, long long N) {
    long long shift24 = 0;
    for (auto [d, e] : factors) shift24 += d * e;
    if (shift24 % 24)
        throw std::domain_error("eta_product: q-exponent not integral");
    long long shift = shift24 / 24;
    std::vector<Int> acc(N + 1, 0);
    acc[0] = 1;
    for (auto [d, e] : factors) {
        if (e < 0) throw std::domain_error("eta_product: negative exponents unsupported");
        auto f = eta_power_q(N);
        auto fe = ipow_series(f, e, N);
        // substitute q -> q^d then multiply
        std::vector<Int> t(N + 1, 0);
        for (long long i = 0; i <= N; ++i) {
            if (acc[size_t(i)] == 0) continue;
            for (long long j = 0; i + j * d <= N; ++j) {
                if (fe[size_t(j)] == 0) continue;
                t[size_t(i + j * d)] += acc[size_t(i)] * fe[size_t(j)];
            }
        }
        acc = std::move(t);
    }
    QExp out(N + 1, Rat(0));
    for (long long n = shift; n <= N; ++n) out[size_t(n)] = Rat(acc[size_t(n - shift)]);
    return out;
}

QExp mul(const QExp& a, const QExp& b, long long N) {
    QExp r(N + 1, Rat(0));
    for (long long i = 0; i <= N && i < (long long)a.size(); ++i) {
        if (a[size_t(i)] == 0) continue;
        for (long long j = 0; i + j <= N && j < (long long)b.size(); ++j)
            r[size_t(i + j)] += a[size_t(i)] * b[size_t(j)];
    }
    return r;
}

QExp pow(const QExp& a, int e, long long N) {
    QExp r(N + 1, Rat(0));
    r[0] = 1;
    for (int i = 0; i < e; ++i) r = mul(r, a, N);
    return r;
}

QExp hecke_Tp(const QExp& a, long long p, int k) {
    long long N = (long long)a.size() - 1;
    long long M = N / p;
    QExp b(M + 1, Rat(0));
    Rat pk = rpow(Rat(p), k - 1);
    for (long long n = 0; n <= M; ++n) {
        b[size_t(n)] = a[size_t(n * p)];
        if (n % p == 0) b[size_t(n)] += pk * a[size_t(n / p)];
    }
    return b;
}

cplx EllEigenform::a(long long n) const {
    return to_cplx(u[size_t(n)]) + to_cplx(v[size_t(n)]) * std::sqrt(double(d));
}

Rat EllEigenform::a_rat(long long n) const {
    if (d != 1 && v[size_t(n)] != 0) throw std::domain_error("a_rat: irrational coefficient");
    return u[size_t(n)];
}

std::vector<EllEigenform> eigenforms(const std::vector<QExp>& basis, int k, long long level,
                                     long long N) {
    size_t dim = basis.size();
    // normalize: solve for combinations with leading coefficients e_i at q^1..q^dim
    // matrix of first coefficients
    // apply T_2 on the basis and express in terms of the basis via the leading block
    for (const auto& b : basis)
        if ((long long)b.size() <= 2 * (long long)dim)
            throw std::domain_error("eigenforms: expansions too short");
    auto solve_coords = [&](const QExp& f) {
        // express f in basis using coefficients 1..dim (block assumed invertible)
        std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(dim + 1));
        for (size_t i = 0; i < dim; ++i) {
            for (size_t j = 0; j < dim; ++j) m[i][j] = basis[j][i + 1];
            m[i][dim] = f[i + 1];
        }
        // gaussian elimination
        for (size_t col = 0, row = 0; col < dim; ++col) {
            size_t piv = row;
            while (piv < dim && m[piv][col] == 0) ++piv;
            if (piv == dim) throw std::domain_error("eigenforms: basis block singular");
            std::swap(m[piv], m[row]);
            Rat inv = Rat(1) / m[row][col];
            for (size_t j = col; j <= dim; ++j) m[row][j] *= inv;
            for (size_t i = 0; i < dim; ++i) {
                if (i == row || m[i][col] == 0) continue;
                Rat f2 = m[i][col];
                for (size_t j = col; j <= dim; ++j) m[i][j] -= f2 * m[row][j];
            }
            ++row;
        }
        std::vector<Rat> x(dim);
        for (size_t i = 0; i < dim; ++i) x[i] = m[i][dim];
        return x;
    };
    // T2 matrix
    std::vector<std::vector<Rat>> M(dim, std::vector<Rat>(dim));
    for (size_t j = 0; j < dim; ++j) {
        QExp t = hecke_Tp(basis[j], 2, k);
        auto x = solve_coords(t);
        for (size_t i = 0; i < dim; ++i) M[i][j] = x[i];
    }
    // eigenvalues: roots of char poly; desk scale dim <= 4, use double roots + exact verify
    // char poly via Faddeev-LeVerrier
    std::vector<Rat> cp(dim + 1, Rat(0));  // x^dim + c1 x^{dim-1} + ...
    {
        std::vector<std::vector<Rat>> Mk(dim, std::vector<Rat>(dim, Rat(0))), I(Mk);
        for (size_t i = 0; i < dim; ++i) I[i][i] = 1;
        auto matmul = [&](const auto& A, const auto& B) {
            std::vector<std::vector<Rat>> C(dim, std::vector<Rat>(dim, Rat(0)));
            for (size_t i = 0; i < dim; ++i)
                for (size_t l = 0; l < dim; ++l) {
                    if (A[i][l] == 0) continue;
                    for (size_t j = 0; j < dim; ++j) C[i][j] += A[i][l] * B[l][j];
                }
            return C;
        };
        cp[0] = 1;
        std::vector<std::vector<Rat>> Ak = I;
        for (size_t m = 1; m <= dim; ++m) {
            Ak = matmul(M, Ak);
            Rat tr = 0;
            for (size_t i = 0; i < dim; ++i) tr += Ak[i][i];
            cp[m] = -tr / Rat((long)m);
            for (size_t i = 0; i < dim; ++i) Ak[i][i] += cp[m];
        }
    }
    auto poly_eval = [&](const Rat& x) {
        Rat v = 0;
        for (size_t i = 0; i <= dim; ++i) v = v * x + cp[i];
        return v;
    };
    // find rational (integer) roots by rounding double roots of the polynomial
    std::vector<Rat> ratroots;
    {
        std::vector<double> c(dim + 1);
        for (size_t i = 0; i <= dim; ++i) c[i] = to_double(cp[i]);
        // Durand-Kerner on the monic polynomial
        size_t n = dim;
        std::vector<cplx> z(n);
        for (size_t i = 0; i < n; ++i)
            z[i] = std::pow(cplx(0.4, 0.9), double(i)) * (1e3 + 1.0);
        for (int it = 0; it < 500; ++it) {
            for (size_t i = 0; i < n; ++i) {
                cplx p = 1;
                cplx x = z[i];
                cplx val = 0;
                for (size_t j = 0; j <= n; ++j) val = val * x + c[j];
                for (size_t j = 0; j < n; ++j)
                    if (j != i) p *= (z[i] - z[j]);
                z[i] -= val / p;
            }
        }
        for (size_t i = 0; i < n; ++i) {
            if (std::abs(z[i].imag()) < 1e-3 * (1 + std::abs(z[i].real()))) {
                Rat cand = Rat(Int(std::llround(z[i].real())));
                if (poly_eval(cand) == 0 &&
                    std::find(ratroots.begin(), ratroots.end(), cand) == ratroots.end())
                    ratroots.push_back(cand);
            }
        }
    }
    std::vector<EllEigenform> out;
    auto kernel_vector = [&](const Rat& lam) {
        // one kernel vector of (M - lam I)
        std::vector<std::vector<Rat>> A(dim, std::vector<Rat>(dim));
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) A[i][j] = M[i][j] - (i == j ? lam : Rat(0));
        std::vector<size_t> pivcol;
        size_t row = 0;
        for (size_t col = 0; col < dim && row < dim; ++col) {
            size_t piv = row;
            while (piv < dim && A[piv][col] == 0) ++piv;
            if (piv == dim) continue;
            std::swap(A[piv], A[row]);
            Rat inv = Rat(1) / A[row][col];
            for (size_t j = 0; j < dim; ++j) A[row][j] *= inv;
            for (size_t i = 0; i < dim; ++i) {
                if (i == row || A[i][col] == 0) continue;
                Rat f = A[i][col];
                for (size_t j = 0; j < dim; ++j) A[i][j] -= f * A[row][j];
            }
            pivcol.push_back(col);
            ++row;
        }
        std::vector<Rat> x(dim, Rat(0));
        // choose a free column
        size_t freec = dim;
        for (size_t c2 = 0; c2 < dim; ++c2)
            if (std::find(pivcol.begin(), pivcol.end(), c2) == pivcol.end()) { freec = c2; break; }
        if (freec == dim) throw std::logic_error("kernel_vector: no kernel");
        x[freec] = 1;
        for (size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = -A[i][freec];
        return x;
    };
    long long Nout = N;
    for (const auto& b : basis) Nout = std::min<long long>(Nout, (long long)b.size() - 1);
    auto build = [&](const std::vector<Rat>& coeffs) {
        QExp f(Nout + 1, Rat(0));
        for (size_t j = 0; j < dim; ++j)
            for (long long n = 0; n <= Nout; ++n) f[size_t(n)] += coeffs[j] * basis[j][size_t(n)];
        // normalize a_1 = 1
        if (f[1] == 0) throw std::logic_error("eigenforms: a_1 = 0");
        Rat inv = Rat(1) / f[1];
        for (auto& x : f) x *= inv;
        return f;
    };
    for (const Rat& lam : ratroots) {
        auto x = kernel_vector(lam);
        EllEigenform e;
        e.d = 1;
        e.k = k;
        e.level = level;
        e.u = build(x);
        e.v.assign(e.u.size(), Rat(0));
        out.push_back(std::move(e));
    }
    // quadratic blocks: factor out rational roots, handle a remaining quadratic
    std::vector<Rat> rem = cp;
    for (const Rat& lam : ratroots) {
        std::vector<Rat> q(rem.size() - 1);
        Rat carry = 0;
        for (size_t i = 0; i + 1 < rem.size(); ++i) {
            q[i] = rem[i] + carry;
            carry = q[i] * lam;
        }
        rem = q;
    }
    if (rem.size() == 3) {  // x^2 + b x + c, conjugate pair over Q(sqrt(disc))
        Rat b = rem[1], c = rem[2];
        Rat disc = b * b - 4 * c;
        // write disc = d * s^2 with d squarefree integer
        Int num = numerator(disc), den = denominator(disc);
        Int m = num * den;  // disc = m / den^2
        Int s2 = 1;
        for (Int f = 2; f * f * f * f <= m * m; ++f) {
            if (f * f > boost::multiprecision::abs(m)) break;
            while (m % (f * f) == 0) { m /= f * f; s2 *= f; }
        }
        long long d = m.convert_to<long long>();
        // eigenvalue lam = (-b + s sqrt(d))/2 with s = s2/den
        Rat s = Rat(s2, den);
        // eigenvector over Q(sqrt(d)): (M - lam) x = 0, do arithmetic in Q(sqrt(d))
        QMat A(int(dim), int(dim));
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) {
                QuadElt v(M[i][j], Rat(0), d);
                if (i == j) v = v - QuadElt(-b / 2, s / 2, d);
                A(int(i), int(j)) = v;
            }
        // kernel over the quadratic field
        QMat W = A;
        int rank = qmat_row_echelon(W);
        if (rank >= (int)dim) throw std::logic_error("eigenforms: quadratic block has no kernel");
        // free column
        std::vector<int> isPiv(dim, 0);
        {
            int rr = 0;
            for (int ccol = 0; ccol < (int)dim && rr < rank; ++ccol) {
                if (!W(rr, ccol).is_zero()) { isPiv[ccol] = 1; ++rr; }
            }
        }
        int freec = -1;
        for (int ccol = 0; ccol < (int)dim; ++ccol)
            if (!isPiv[ccol]) { freec = ccol; break; }
        std::vector<QuadElt> x(dim);
        x[freec] = QuadElt(Rat(1), Rat(0), d);
        {
            int rr = 0;
            for (int ccol = 0; ccol < (int)dim && rr < rank; ++ccol) {
                if (!isPiv[ccol]) continue;
                x[ccol] = QuadElt(Rat(0), Rat(0), d) - W(rr, freec);
                ++rr;
            }
        }
        EllEigenform e;
        e.d = d;
        e.k = k;
        e.level = level;
        e.u.assign(Nout + 1, Rat(0));
        e.v.assign(Nout + 1, Rat(0));
        for (size_t j = 0; j < dim; ++j)
            for (long long n = 0; n <= Nout; ++n) {
                e.u[size_t(n)] += x[j].x * basis[j][size_t(n)];
                e.v[size_t(n)] += x[j].y * basis[j][size_t(n)];
            }
        // normalize a_1 = 1
        QuadElt a1(e.u[1], e.v[1], d);
        if (a1.is_zero()) throw std::logic_error("eigenforms: a_1 = 0 in quadratic block");
        for (long long n = 0; n <= Nout; ++n) {
            QuadElt an(e.u[size_t(n)], e.v[size_t(n)], d);
            an = an / a1;
            e.u[size_t(n)] = an.x;
            e.v[size_t(n)] = an.y;
        }
        // the Galois conjugate eigenform
        EllEigenform ec = e;
        for (auto& vv : ec.v) vv = -vv;
        out.push_back(std::move(e));
        out.push_back(std::move(ec));
    } else if (rem.size() > 3) {
        throw std::domain_error("eigenforms: blocks of degree > 2 unsupported");
    }
    return out;
}

} // namespace sbp::ell
