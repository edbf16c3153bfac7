#include "sbp/elliptic.hpp"
#include "sbp/siegel.hpp"

namespace sbp::siegel {

Rat cohen_H(int r, long long N) {
    if (r < 1) throw std::domain_error("cohen_H: r >= 1 required");
    if (N < 0) return 0;
    if (N == 0) return -bernoulli(2 * r) / Rat(2 * r);  // zeta(1-2r)
    // (-1)^r N must be 0 or 1 mod 4
    long long sgnN = (r % 2) ? -N : N;
    long long m4 = ((sgnN % 4) + 4) % 4;
    if (m4 == 2 || m4 == 3) return 0;
    // sgnN = D0 f^2, D0 fundamental quadratic discriminant (or 1)
    long long f = 1;
    for (long long g = 2; g * g <= std::abs(sgnN); ++g) {
        while (sgnN % (g * g) == 0) {
            long long cand = sgnN / (g * g);
            long long c4 = ((cand % 4) + 4) % 4;
            if (c4 == 0 || c4 == 1) {
                sgnN = cand;
                f *= g;
            } else
                break;
        }
    }
    long long D0 = sgnN;
    // if D0 = 1 the character is trivial: L(1-r, triv) = zeta(1-r) = -B_r / r
    Rat L;
    if (D0 == 1) {
        L = -bernoulli(r) / Rat(r);
    } else {
        long long aD = std::abs(D0);
        Rat B = 0;
        for (long long a = 1; a <= aD; ++a) {
            int chi = kronecker_symbol(Int(D0), Int(a));
            if (chi == 0) continue;
            B += Rat(chi) * bernoulli_poly(r, Rat(a, aD));
        }
        B *= rpow(Rat(aD), r - 1);
        L = -B / Rat(r);
    }
    Rat s = 0;
    for (long long d = 1; d <= f; ++d) {
        if (f % d) continue;
        // mu(d)
        int mu = 1;
        long long dd = d;
        for (long long p = 2; p * p <= dd; ++p) {
            if (dd % p == 0) {
                dd /= p;
                if (dd % p == 0) { mu = 0; break; }
                mu = -mu;
            }
        }
        if (mu != 0 && dd > 1) mu = -mu;
        if (mu == 0) continue;
        Int sig = 0;
        long long q = f / d;
        for (long long e = 1; e <= q; ++e)
            if (q % e == 0) sig += ipow(Int(e), 2 * r - 1);
        s += Rat(mu * kronecker_symbol(Int(D0), Int(d))) * rpow(Rat(d), r - 1) * Rat(sig);
    }
    return L * s;
}

std::vector<Rat> eisenstein_elliptic(int k, long long N) { return ell::eisenstein_q(k, N); }

std::vector<Rat> phi_operator(const Expansion& F, long long N) {
    std::vector<Rat> out(N + 1);
    for (long long n = 0; n <= N; ++n) out[size_t(n)] = F.sing_at(n);
    return out;
}

namespace {

// primitive-class value c_k * H(k-1, Dv) with the divisor sum over the content
Rat eisen_pd_value(int k, const Rat& ck, const TIndex& T) {
    long long e = T.content(), Dv = T.det4();
    Rat s = 0;
    for (long long d = 1; d <= e; ++d) {
        if (e % d) continue;
        long long q = Dv / (d * d);
        if (q * d * d != Dv) continue;
        s += rpow(Rat(d), k - 1) * cohen_H(k - 1, q);
    }
    return ck * s;
}

// sum over b of a(m, b, n) for the candidate series, pd part only as a function
// of ck; singular terms passed in separately
Rat diag_restriction_pd_H(int k, long long m, long long n) {
    Rat s = 0;
    long long lim = 2 * isqrtll(m * n);
    for (long long b = -lim; b <= lim; ++b) {
        TIndex T{m, b, n};
        if (T.det4() <= 0) continue;
        s += eisen_pd_value(k, Rat(1), T);
    }
    return s;
}

Rat diag_restriction_sing(int k, long long m, long long n) {
    // contributions of singular T = (m, b, n) with 4mn = b^2: value sigma_{k-1}(content)*e_k(1)-scale
    Rat s = 0;
    long long lim = 2 * isqrtll(m * n);
    Rat ek1 = Rat(-2 * k) / bernoulli(k);
    if (lim * lim == 4 * m * n) {
        for (long long b : {-lim, lim}) {
            if (b == 0 && lim != 0) continue;
            TIndex T{m, b, n};
            if (T.det4() != 0) continue;
            long long cont = (m == 0 && n == 0) ? 0 : T.content();
            if (m == 0 && n == 0) {
                s += 1;  // constant term
                break;
            }
            Int sig = 0;
            for (long long d = 1; d <= cont; ++d)
                if (cont % d == 0) sig += ipow(Int(d), k - 1);
            s += ek1 * Rat(sig);
            if (lim == 0) break;
        }
    }
    return s;
}

} // namespace

Expansion eisenstein(int k, long long B) {
    if (k < 4 || k % 2)
        throw std::domain_error("eisenstein: even k >= 4 required");
    // candidate constant from the rank-1 / rank-2 normalization chain
    Rat zeta_3_2k = -bernoulli(2 * k - 2) / Rat(2 * k - 2);  // zeta(3-2k)
    Rat ck = (Rat(-2 * k) / bernoulli(k)) / zeta_3_2k;

    // pin/validate ck through restriction to the diagonal.
    // S_k(SL2) = 0 for k in {4,6,10(,8)}: sum_b a(m,b,n) = e_k(m) e_k(n);
    // k = 12: sum_b a(m,b,n) = e_12(m) e_12(n) + gamma tau(m) tau(n).
    {
        auto ek = ell::eisenstein_q(k, 4);
        std::vector<std::pair<long long, long long>> pins = {{1, 1}, {2, 1}, {1, 3}, {2, 2}};
        Rat gamma = 0;
        std::vector<Rat> tau;
        if (k == 12) {
            tau = ell::delta_q(4);
            // solve ck, gamma from (1,1) and (2,1)
            Rat h11 = diag_restriction_pd_H(k, 1, 1), s11 = diag_restriction_sing(k, 1, 1);
            Rat h21 = diag_restriction_pd_H(k, 2, 1), s21 = diag_restriction_sing(k, 2, 1);
            Rat r11 = ek[1] * ek[1] - s11, r21 = ek[2] * ek[1] - s21;
            // ck h11 + gamma tau1 tau1 = r11 ; ck h21 + gamma tau2 tau1 = r21
            Rat det = h11 * tau[2] * tau[1] - h21 * tau[1] * tau[1];
            if (det == 0) throw std::logic_error("eisenstein: degenerate pinning system");
            Rat ck_solved = (r11 * tau[2] * tau[1] - r21 * tau[1] * tau[1]) / det;
            gamma = (h11 * r21 - h21 * r11) / det;
            ck = ck_solved;
        }
        for (auto [m, n] : pins) {
            Rat lhs = ck * diag_restriction_pd_H(k, m, n) + diag_restriction_sing(k, m, n);
            if (k == 12) lhs += gamma * tau[size_t(m)] * tau[size_t(n)];
            if (lhs != ek[size_t(m)] * ek[size_t(n)])
                throw std::logic_error("eisenstein: diagonal restriction check failed");
        }
    }

    Expansion F(WeightData{k, 0}, 1, B);
    // singular part
    Rat c1 = Rat(-2 * k) / bernoulli(k);
    F.sing[0] = 1;
    for (long long n = 1; n <= F.sing_bound; ++n) {
        Int sig = 0;
        for (long long d = 1; d <= n; ++d)
            if (n % d == 0) sig += ipow(Int(d), k - 1);
        F.sing[size_t(n)] = c1 * Rat(sig);
    }
    for (const TIndex& T : reduced_classes(B)) F.set(T, {eisen_pd_value(k, ck, T)});
    return F;
}

std::pair<Expansion, Expansion> igusa_cusp_generators(long long B) {
    if (B < 16) throw std::domain_error("igusa_cusp_generators: bound too small");
    Expansion e4 = eisenstein(4, B), e6 = eisenstein(6, B);
    Expansion e10 = eisenstein(10, B), e12 = eisenstein(12, B);
    Expansion e4e6 = multiply(e4, e6);
    // chi10 = x * e4e6 + y * e10 cuspidal: constant terms are both 1,
    // rank-1 parts are proportional to distinct elliptic series; solve exactly.
    auto solve2 = [](const Expansion& A, const Expansion& Bf) {
        // x A + y B cuspidal, scale fixed later; use constant and n=1 rank-1 term
        Rat a0 = A.sing_at(0), b0 = Bf.sing_at(0);
        Rat a1 = A.sing_at(1), b1 = Bf.sing_at(1);
        Rat det = a0 * b1 - a1 * b0;
        if (det == 0) throw std::logic_error("igusa: degenerate Eisenstein system");
        // kernel of [[a0,b0],[a1,b1]]
        return std::pair<Rat, Rat>(b0, -a0);
    };
    auto [x10, y10] = solve2(e4e6, e10);
    Expansion chi10 = e4e6;
    chi10 *= x10;
    chi10.add_scaled(e10, y10);
    if (!chi10.is_cuspidal()) {
        // the 2x2 solve used only two conditions; verify the full singular tail
        throw std::logic_error("igusa: chi10 singular part does not vanish");
    }
    TIndex T0{1, 1, 1};
    Rat n10 = chi10.lookup(T0)[0];
    if (n10 == 0) throw std::logic_error("igusa: chi10 vanishes at the minimal class");
    chi10 *= Rat(1) / n10;

    Expansion e4sq = multiply(e4, e4);
    Expansion e4cb = multiply(e4sq, e4);
    Expansion e6sq = multiply(e6, e6);
    // chi12 = x e4^3 + y e6^2 + z e12 cuspidal
    // solve on constant + two rank-1 conditions
    Rat a0 = e4cb.sing_at(0), b0 = e6sq.sing_at(0), c0 = e12.sing_at(0);
    Rat a1 = e4cb.sing_at(1), b1 = e6sq.sing_at(1), c1v = e12.sing_at(1);
    Rat a2 = e4cb.sing_at(2), b2 = e6sq.sing_at(2), c2v = e12.sing_at(2);
    // kernel of 3x2... solve x,y in terms of z = 1 then rescale; system:
    // x a0 + y b0 + c0 = 0 ; x a1 + y b1 + c1 = 0 ; check row 3
    Rat det = a0 * b1 - a1 * b0;
    if (det == 0) throw std::logic_error("igusa: degenerate weight-12 system");
    Rat x12 = (-c0 * b1 + c1v * b0) / det;
    Rat y12 = (-a0 * c1v + a1 * c0) / det;
    if (x12 * a2 + y12 * b2 + c2v != 0)
        throw std::logic_error("igusa: weight-12 kernel inconsistent");
    Expansion chi12 = e4cb;
    chi12 *= x12;
    chi12.add_scaled(e6sq, y12);
    chi12.add_scaled(e12, Rat(1));
    if (!chi12.is_cuspidal()) throw std::logic_error("igusa: chi12 singular part does not vanish");
    Rat n12 = chi12.lookup(T0)[0];
    if (n12 == 0) throw std::logic_error("igusa: chi12 vanishes at the minimal class");
    chi12 *= Rat(1) / n12;
    return {std::move(chi10), std::move(chi12)};
}

std::vector<Expansion> cusp_space(int k, long long B) {
    if (k % 2 || k < 4) throw std::domain_error("cusp_space: even k >= 4");
    if (k > 30) throw std::domain_error("cusp_space: desk scale is k <= 30");
    Expansion e4 = eisenstein(4, B), e6 = eisenstein(6, B);
    auto [chi10, chi12] = igusa_cusp_generators(B);
    // monomials e4^a e6^b chi10^c chi12^d of weight k
    std::vector<Expansion> monomials;
    for (int a = 0; 4 * a <= k; ++a)
        for (int b = 0; 4 * a + 6 * b <= k; ++b)
            for (int c = 0; 4 * a + 6 * b + 10 * c <= k; ++c)
                for (int d = 0; 4 * a + 6 * b + 10 * c + 12 * d <= k; ++d) {
                    if (4 * a + 6 * b + 10 * c + 12 * d != k) continue;
                    Expansion m(WeightData{0, 0}, 1, B);
                    m.sing.assign(size_t(m.sing_bound + 1), Rat(0));
                    m.sing[0] = 1;
                    for (const TIndex& T : reduced_classes(B)) m.set(T, {Rat(0)});
                    bool first = true;
                    auto mulin = [&](const Expansion& f, int e) {
                        for (int i = 0; i < e; ++i) {
                            if (first) {
                                m = f;
                                first = false;
                            } else
                                m = multiply(m, f);
                        }
                    };
                    mulin(e4, a);
                    mulin(e6, b);
                    mulin(chi10, c);
                    mulin(chi12, d);
                    if (first) continue;  // k = 0
                    monomials.push_back(std::move(m));
                }
    // cusp condition: kernel of the singular-coefficient map
    size_t nm = monomials.size();
    long long smax = monomials.empty() ? 0 : monomials[0].sing_bound;
    for (const auto& m : monomials) smax = std::min(smax, m.sing_bound);
    std::vector<std::vector<Rat>> mat(size_t(smax + 1), std::vector<Rat>(nm));
    for (size_t j = 0; j < nm; ++j)
        for (long long i = 0; i <= smax; ++i) mat[size_t(i)][j] = monomials[j].sing_at(i);
    // kernel via column reduction
    std::vector<std::vector<Rat>> kern;
    {
        std::vector<std::vector<Rat>> A = mat;
        size_t rows = A.size();
        std::vector<int> pivotofcol(nm, -1);
        size_t rank = 0;
        std::vector<std::vector<Rat>> R(rows, std::vector<Rat>(nm));
        R = A;
        std::vector<size_t> pivcols;
        for (size_t col = 0; col < nm && rank < rows; ++col) {
            size_t piv = rank;
            while (piv < rows && R[piv][col] == 0) ++piv;
            if (piv == rows) continue;
            std::swap(R[piv], R[rank]);
            Rat inv = Rat(1) / R[rank][col];
            for (size_t j = 0; j < nm; ++j) R[rank][j] *= inv;
            for (size_t i = 0; i < rows; ++i) {
                if (i == rank || R[i][col] == 0) continue;
                Rat f = R[i][col];
                for (size_t j = 0; j < nm; ++j) R[i][j] -= f * R[rank][j];
            }
            pivcols.push_back(col);
            ++rank;
        }
        std::vector<int> ispiv(nm, 0);
        for (size_t c : pivcols) ispiv[c] = 1;
        for (size_t c = 0; c < nm; ++c) {
            if (ispiv[c]) continue;
            std::vector<Rat> v(nm, Rat(0));
            v[c] = 1;
            for (size_t i = 0; i < pivcols.size(); ++i) v[pivcols[i]] = -R[i][c];
            kern.push_back(v);
        }
        (void)pivotofcol;
    }
    std::vector<Expansion> out;
    for (const auto& v : kern) {
        Expansion f(WeightData{k, 0}, 1, B);
        bool started = false;
        for (size_t j = 0; j < nm; ++j) {
            if (v[j] == 0) continue;
            if (!started) {
                f = monomials[j];
                f *= v[j];
                started = true;
            } else
                f.add_scaled(monomials[j], v[j]);
        }
        if (!f.is_cuspidal()) throw std::logic_error("cusp_space: kernel form not cuspidal");
        out.push_back(std::move(f));
    }
    // certify linear independence at this bound
    {
        auto keys = reduced_classes(std::min<long long>(B, 60));
        std::vector<std::vector<Rat>> A;
        for (const auto& f : out) {
            std::vector<Rat> row;
            for (const auto& T : keys) row.push_back(f.lookup(T)[0]);
            A.push_back(row);
        }
        // row rank
        size_t rank = 0;
        size_t rows = A.size(), cols = keys.size();
        for (size_t col = 0; col < cols && rank < rows; ++col) {
            size_t piv = rank;
            while (piv < rows && A[piv][col] == 0) ++piv;
            if (piv == rows) continue;
            std::swap(A[piv], A[rank]);
            for (size_t i = 0; i < rows; ++i) {
                if (i == rank || A[i][col] == 0) continue;
                Rat f = A[i][col] / A[rank][col];
                for (size_t j = 0; j < cols; ++j) A[i][j] -= f * A[rank][j];
            }
            ++rank;
        }
        if (rank != out.size())
            throw std::logic_error("cusp_space: insufficient bound to certify independence");
    }
    return out;
}

} // namespace sbp::siegel
