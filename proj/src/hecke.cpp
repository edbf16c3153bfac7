#include "sbp/siegel.hpp"

#include <algorithm>
#include <map>

namespace sbp::siegel {

namespace {

// Sym(Q) element as coordinates (x1, x2, x3) <-> [[x1, x2],[x2, x3]]
struct SymQ {
    Rat x1, x2, x3;
};

// A-block family of block-triangular cosets [[A, B],[0, mu A^{-t}]]:
// all B in a fixed A-family collapse under the Fourier phase sum.
struct CosetFamily {
    long long A[2][2];   // Hermite form [[d1, s],[0, d2]]
    long long nB;        // number of B-translation classes
    std::vector<SymQ> lattice_basis;  // basis of L'_A = {X in Sym(Q) : A X integral}
};

// kernel basis of an r x c integer matrix (row action: {x : M x = 0}),
// via column reduction with transformation tracking; small inputs only
std::vector<std::vector<long long>> int_kernel(std::vector<std::vector<long long>> M) {
    size_t r = M.size(), c = M[0].size();
    std::vector<std::vector<long long>> U(c, std::vector<long long>(c, 0));
    for (size_t i = 0; i < c; ++i) U[i][i] = 1;
    size_t lead = 0;
    for (size_t row = 0; row < r && lead < c; ++row) {
        // clear row 'row' across columns >= lead by gcd steps
        for (;;) {
            size_t piv = c;
            for (size_t j = lead; j < c; ++j)
                if (M[row][j] != 0) { piv = j; break; }
            if (piv == c) break;
            if (piv != lead) {
                for (size_t i = 0; i < r; ++i) std::swap(M[i][piv], M[i][lead]);
                for (size_t i = 0; i < c; ++i) std::swap(U[i][piv], U[i][lead]);
            }
            bool clean = true;
            for (size_t j = lead + 1; j < c; ++j) {
                if (M[row][j] == 0) continue;
                long long q = M[row][j] / M[row][lead];
                for (size_t i = 0; i < r; ++i) M[i][j] -= q * M[i][lead];
                for (size_t i = 0; i < c; ++i) U[i][j] -= q * U[i][lead];
                if (M[row][j] != 0) clean = false;
            }
            if (clean) {
                ++lead;
                break;
            }
        }
    }
    // zero columns of M give kernel vectors (columns of U)
    std::vector<std::vector<long long>> out;
    for (size_t j = 0; j < c; ++j) {
        bool zero = true;
        for (size_t i = 0; i < r; ++i)
            if (M[i][j] != 0) { zero = false; break; }
        if (!zero) continue;
        std::vector<long long> v(3);
        for (size_t i = 0; i < 3; ++i) v[i] = U[i][j];
        out.push_back(v);
    }
    return out;
}

// integer row-HNF of a 3x3 matrix (rows span the lattice), returns basis rows
// only used for small determinants; naive algorithm
void hnf3(long long m[3][3]) {
    int row = 0;
    for (int col = 0; col < 3 && row < 3; ++col) {
        // find pivot
        int p = -1;
        for (int i = row; i < 3; ++i)
            if (m[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[p], m[row]);
        for (;;) {
            bool done = true;
            for (int i = row + 1; i < 3; ++i) {
                if (m[i][col] == 0) continue;
                long long q = m[i][col] / m[row][col];
                for (int j = 0; j < 3; ++j) m[i][j] -= q * m[row][j];
                if (m[i][col] != 0) {
                    std::swap(m[i], m[row]);
                    done = false;
                }
            }
            if (done) break;
        }
        if (m[row][col] < 0)
            for (int j = 0; j < 3; ++j) m[row][j] = -m[row][j];
        for (int i = 0; i < row; ++i) {
            long long q = m[i][col] / m[row][col];
            if (m[i][col] % m[row][col] < 0) q -= 1;
            for (int j = 0; j < 3; ++j) m[i][j] -= q * m[row][j];
        }
        ++row;
    }
}

std::vector<CosetFamily> build_families(long long mu) {
    std::vector<CosetFamily> out;
    for (long long d1 = 1; d1 <= mu; ++d1) {
        if ((mu * mu) % d1) continue;
        for (long long d2 = 1; d1 * d2 <= mu * mu; ++d2) {
            if ((mu * mu) % (d1 * d2)) continue;
            long long Delta = d1 * d2;
            // D = mu A^{-t} integral: Delta | mu d1, mu d2, mu s
            if ((mu * d1) % Delta || (mu * d2) % Delta) continue;
            for (long long s = 0; s < d2; ++s) {
                if ((mu * s) % Delta) continue;
                CosetFamily fam;
                fam.A[0][0] = d1; fam.A[0][1] = s;
                fam.A[1][0] = 0;  fam.A[1][1] = d2;
                // L'_A = {X in Sym(Q): A X integral}; denominators divide Delta.
                // Over Y = Delta X in Z^3 the conditions read
                //   d1 y1 + s y2 = 0 (Delta), d1 y2 + s y3 = 0 (Delta),
                //   d2 y2 = 0 (Delta),        d2 y3 = 0 (Delta).
                // The lattice is the Y-projection of the integer kernel of
                // [C | Delta I_4] acting on (Y, W).
                long long C[4][3] = {{d1, s, 0}, {0, d1, s}, {0, d2, 0}, {0, 0, d2}};
                std::vector<std::vector<long long>> K(4, std::vector<long long>(7, 0));
                for (int i = 0; i < 4; ++i) {
                    for (int j = 0; j < 3; ++j) K[i][j] = C[i][j];
                    K[i][3 + i] = Delta;
                }
                auto ker = int_kernel(K);
                if (ker.size() != 3)
                    throw std::logic_error("hecke: kernel rank != 3");
                long long basis[3][3];
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) basis[i][j] = ker[size_t(i)][size_t(j)];
                hnf3(basis);
                // translation lattice T'_A: Y = Delta * mu A^{-1} S A^{-t}, S = E11, E12+E21, E22
                // A^{-1} = adj/Delta => Y = (mu/Delta) adj(A) S adj(A)^t
                long long ad[2][2] = {{d2, -s}, {0, d1}};
                auto sym_of = [&](long long S11, long long S12, long long S22,
                                  long long out[3]) {
                    // M = ad * S * ad^t, S = [[S11, S12],[S12, S22]]
                    long long M11 = ad[0][0] * (S11 * ad[0][0] + S12 * ad[0][1]) +
                                    ad[0][1] * (S12 * ad[0][0] + S22 * ad[0][1]);
                    long long M12 = ad[0][0] * (S11 * ad[1][0] + S12 * ad[1][1]) +
                                    ad[0][1] * (S12 * ad[1][0] + S22 * ad[1][1]);
                    long long M22 = ad[1][0] * (S11 * ad[1][0] + S12 * ad[1][1]) +
                                    ad[1][1] * (S12 * ad[1][0] + S22 * ad[1][1]);
                    if ((mu * M11) % Delta || (mu * M12) % Delta || (mu * M22) % Delta)
                        throw std::logic_error("hecke: translation lattice not integral");
                    out[0] = mu * M11 / Delta;
                    out[1] = mu * M12 / Delta;
                    out[2] = mu * M22 / Delta;
                };
                long long tb[3][3];
                sym_of(1, 0, 0, tb[0]);
                sym_of(0, 1, 0, tb[1]);
                sym_of(0, 0, 1, tb[2]);
                // quotient size = det(T') / det(L') over the Y-coordinates
                hnf3(tb);
                auto det3 = [](long long m[3][3]) {
                    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                };
                long long dT = std::llabs(det3(tb)), dL = std::llabs(det3(basis));
                if (dL == 0 || dT % dL)
                    throw std::logic_error("hecke: bad lattice quotient");
                fam.nB = dT / dL;
                for (int i = 0; i < 3; ++i)
                    fam.lattice_basis.push_back(
                        {Rat(basis[i][0], Delta), Rat(basis[i][1], Delta), Rat(basis[i][2], Delta)});
                out.push_back(std::move(fam));
            }
        }
    }
    return out;
}

const std::vector<CosetFamily>& families_cached(long long mu) {
    static std::map<long long, std::vector<CosetFamily>> cache;
    auto it = cache.find(mu);
    if (it == cache.end()) it = cache.emplace(mu, build_families(mu)).first;
    return it->second;
}

bool is_integer(const Rat& q) { return denominator(q) == 1; }

} // namespace

std::vector<HeckeCoset> hecke_cosets(long long mu) {
    std::vector<HeckeCoset> out;
    for (const auto& f : families_cached(mu)) {
        HeckeCoset c;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                c.A[i][j] = f.A[i][j];
                c.B[i][j] = 0;
            }
        c.mu = mu;
        c.nB = f.nB;
        out.push_back(c);
    }
    return out;
}

CoeffVec hecke_coeff(const Expansion& F, long long mu, const TIndex& T) {
    const auto& fams = families_cached(mu);
    const WeightData& wt = F.wt;
    CoeffVec acc(wt.dim(), Rat(0));
    for (const auto& fam : fams) {
        long long d1 = fam.A[0][0], s = fam.A[0][1], d2 = fam.A[1][1];
        long long Delta = d1 * d2;
        // T' = mu A^{-t} T A^{-1}; A^{-1} = [[d2, -s],[0, d1]] / Delta
        // T = [[a, b/2],[b/2, c]]
        Rat a(T.a), b2(T.b, 2), c(T.c);
        // M = A^{-t} T A^{-1}
        // A^{-t} = [[d2, 0],[-s, d1]]/Delta
        Rat m11 = (Rat(d2) * a * d2) / (Rat(Delta) * Delta);
        Rat m12 = (Rat(d2) * (a * (-s) + b2 * d1)) / (Rat(Delta) * Delta);
        Rat m22 = (Rat(-s) * (a * (-s) + b2 * d1) + Rat(d1) * (b2 * (-s) + c * d1)) /
                  (Rat(Delta) * Delta);
        Rat ta = Rat(mu) * m11, tb = Rat(mu) * 2 * m12, tc = Rat(mu) * m22;
        if (!is_integer(ta) || !is_integer(tb) || !is_integer(tc)) continue;
        TIndex Tp{numerator(ta).convert_to<long long>(), numerator(tb).convert_to<long long>(),
                  numerator(tc).convert_to<long long>()};
        // phase character must be trivial on L'_A: tr(T X) in Z for basis X
        bool trivial = true;
        for (const auto& X : fam.lattice_basis) {
            Rat tr = Rat(T.a) * X.x1 + Rat(T.b) * X.x2 + Rat(T.c) * X.x3;
            if (!is_integer(tr)) { trivial = false; break; }
        }
        if (!trivial) continue;
        CoeffVec av = F.lookup(Tp);
        bool nonzero = false;
        for (const auto& x : av)
            if (x != 0) { nonzero = true; break; }
        if (!nonzero) continue;
        // rho(D)^{-1} = rho(D^{-1}), D^{-1} = A^t / mu
        qf::Mat2q Dinv;
        Dinv.m[0][0] = Rat(d1, mu); Dinv.m[0][1] = 0;
        Dinv.m[1][0] = Rat(s, mu);  Dinv.m[1][1] = Rat(d2, mu);
        CoeffVec tv = rho_apply(wt, Dinv, av);
        for (int i = 0; i < wt.dim(); ++i) acc[i] += Rat(fam.nB) * tv[i];
    }
    // global normalization mu^{2k + n - 3}
    Rat norm = rpow(Rat(mu), 2 * wt.k + wt.n() - 3);
    for (auto& x : acc) x *= norm;
    return acc;
}

static Expansion hecke_apply_bound(const Expansion& F, long long mu, long long detdiv) {
    Expansion R(F.wt, F.level, F.bound / detdiv);
    R.sing_bound = std::min(R.sing_bound, F.sing_bound / detdiv);
    R.sing.assign(size_t(R.sing_bound + 1), Rat(0));
    for (const TIndex& T : reduced_classes(R.bound)) R.set(T, hecke_coeff(F, mu, T));
    if (F.wt.r == 0) {
        for (long long n = 0; n <= R.sing_bound; ++n)
            R.sing[size_t(n)] = hecke_coeff(F, mu, TIndex{n, 0, 0})[0];
    }
    return R;
}

Expansion hecke_Tp(const Expansion& F, long long p) {
    if (F.level % p == 0) throw std::domain_error("hecke_Tp: p divides the level");
    return hecke_apply_bound(F, p, p * p);
}

Expansion hecke_Tp2(const Expansion& F, long long p) {
    if (F.level % p == 0) throw std::domain_error("hecke_Tp2: p divides the level");
    return hecke_apply_bound(F, p * p, p * p * p * p);
}

// ---- eigenforms ----

namespace {

// first key (in det order) with a nonzero coefficient
TIndex pivot_key(const Expansion& F) {
    for (const TIndex& T : reduced_classes(F.bound)) {
        const CoeffVec* v = F.at_reduced(T);
        if (!v) continue;
        for (const auto& x : *v)
            if (x != 0) return T;
    }
    throw std::domain_error("pivot_key: zero expansion");
}

} // namespace

Rat eigenvalue_Tp(const Expansion& F, long long p) {
    TIndex T0 = pivot_key(F);
    CoeffVec b = hecke_coeff(F, p, T0);
    const CoeffVec& a = *F.at_reduced(T0);
    int i = 0;
    while (a[i] == 0) ++i;
    Rat lam = b[i] / a[i];
    for (int j = 0; j < F.wt.dim(); ++j)
        if (b[j] != lam * a[j]) throw std::logic_error("eigenvalue_Tp: not an eigenform at pivot");
    return lam;
}

Rat eigenvalue_Tp2(const Expansion& F, long long p) {
    TIndex T0 = pivot_key(F);
    CoeffVec b = hecke_coeff(F, p * p, T0);
    const CoeffVec& a = *F.at_reduced(T0);
    int i = 0;
    while (a[i] == 0) ++i;
    return b[i] / a[i];
}

std::vector<EigenformResult> eigenforms_T2(const std::vector<Expansion>& space) {
    size_t dim = space.size();
    if (dim == 0) return {};
    long long B = space[0].bound;
    for (const auto& f : space) B = std::min(B, f.bound);
    if (B < 4 * 4) throw std::domain_error("eigenforms_T2: bound too small for T(2)");
    // coefficient matrix at the first dim independent keys
    std::vector<TIndex> keys;
    {
        auto all = reduced_classes(B / 4);
        std::vector<std::vector<Rat>> rows;
        for (const TIndex& T : all) {
            std::vector<Rat> r;
            for (const auto& f : space) r.push_back(f.lookup(T)[0]);
            // check increases rank
            rows.push_back(r);
            keys.push_back(T);
            // rank via elimination on a copy
            auto cp = rows;
            size_t rank = 0;
            for (size_t col = 0; col < dim && rank < cp.size(); ++col) {
                size_t piv = rank;
                while (piv < cp.size() && cp[piv][col] == 0) ++piv;
                if (piv == cp.size()) continue;
                std::swap(cp[piv], cp[rank]);
                for (size_t i = 0; i < cp.size(); ++i) {
                    if (i == rank || cp[i][col] == 0) continue;
                    Rat fct = cp[i][col] / cp[rank][col];
                    for (size_t j = 0; j < dim; ++j) cp[i][j] -= fct * cp[rank][j];
                }
                ++rank;
            }
            if (rank < rows.size()) {
                rows.pop_back();
                keys.pop_back();
            }
            if (rows.size() == dim) break;
        }
        if (keys.size() < dim)
            throw std::domain_error("eigenforms_T2: coefficients do not separate the space");
    }
    // M: T(2) matrix in the given basis: solve C * M_col = (T2 f_j at keys)
    std::vector<std::vector<Rat>> C(dim, std::vector<Rat>(dim));
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) C[i][j] = space[j].lookup(keys[i])[0];
    auto solve = [&](const std::vector<Rat>& rhs) {
        std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(dim + 1));
        for (size_t i = 0; i < dim; ++i) {
            for (size_t j = 0; j < dim; ++j) m[i][j] = C[i][j];
            m[i][dim] = rhs[i];
        }
        for (size_t col = 0, row = 0; col < dim; ++col, ++row) {
            size_t piv = row;
            while (piv < dim && m[piv][col] == 0) ++piv;
            if (piv == dim) throw std::logic_error("eigenforms_T2: singular key matrix");
            std::swap(m[piv], m[row]);
            Rat inv = Rat(1) / m[row][col];
            for (size_t j = col; j <= dim; ++j) m[row][j] *= inv;
            for (size_t i = 0; i < dim; ++i) {
                if (i == row || m[i][col] == 0) continue;
                Rat f = m[i][col];
                for (size_t j = col; j <= dim; ++j) m[i][j] -= f * m[row][j];
            }
        }
        std::vector<Rat> x(dim);
        for (size_t i = 0; i < dim; ++i) x[i] = m[i][dim];
        return x;
    };
    std::vector<std::vector<Rat>> M(dim, std::vector<Rat>(dim));
    for (size_t j = 0; j < dim; ++j) {
        std::vector<Rat> rhs(dim);
        for (size_t i = 0; i < dim; ++i) rhs[i] = hecke_coeff(space[j], 2, keys[i])[0];
        auto col = solve(rhs);
        for (size_t i = 0; i < dim; ++i) M[i][j] = col[i];
    }
    // char poly (Faddeev-LeVerrier)
    std::vector<Rat> cp(dim + 1, Rat(0));
    {
        std::vector<std::vector<Rat>> Ak(dim, std::vector<Rat>(dim, Rat(0)));
        for (size_t i = 0; i < dim; ++i) Ak[i][i] = 1;
        cp[0] = 1;
        auto matmul = [&](const auto& A, const auto& Bm) {
            std::vector<std::vector<Rat>> Cm(dim, std::vector<Rat>(dim, Rat(0)));
            for (size_t i = 0; i < dim; ++i)
                for (size_t l = 0; l < dim; ++l) {
                    if (A[i][l] == 0) continue;
                    for (size_t j = 0; j < dim; ++j) Cm[i][j] += A[i][l] * Bm[l][j];
                }
            return Cm;
        };
        for (size_t m = 1; m <= dim; ++m) {
            Ak = matmul(M, Ak);
            Rat tr = 0;
            for (size_t i = 0; i < dim; ++i) tr += Ak[i][i];
            cp[m] = -tr / Rat(long(m));
            for (size_t i = 0; i < dim; ++i) Ak[i][i] += cp[m];
        }
    }
    // rational roots: integer roots of the integer-cleared polynomial; find by
    // rounding double roots (eigenvalues at desk scale fit doubles) + exact check
    auto poly_eval = [&](const Rat& x) {
        Rat v = 0;
        for (size_t i = 0; i <= dim; ++i) v = v * x + cp[i];
        return v;
    };
    std::vector<Rat> roots;
    {
        std::vector<double> c(dim + 1);
        for (size_t i = 0; i <= dim; ++i) c[i] = to_double(cp[i]);
        std::vector<cplx> z(dim);
        for (size_t i = 0; i < dim; ++i) z[i] = std::pow(cplx(0.4, 0.9), (double)i) * 1e4;
        for (int it = 0; it < 2000; ++it)
            for (size_t i = 0; i < dim; ++i) {
                cplx val = 0;
                for (size_t j = 0; j <= dim; ++j) val = val * z[i] + c[j];
                cplx den = 1;
                for (size_t j = 0; j < dim; ++j)
                    if (j != i) den *= (z[i] - z[j]);
                z[i] -= val / den;
            }
        for (size_t i = 0; i < dim; ++i) {
            if (std::abs(z[i].imag()) > 1e-2 * (1 + std::abs(z[i].real()))) continue;
            Rat cand = Rat(Int(std::llround(z[i].real())));
            if (poly_eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                roots.push_back(cand);
        }
    }
    std::vector<EigenformResult> out;
    for (const Rat& lam : roots) {
        // kernel of (M - lam)
        std::vector<std::vector<Rat>> A(dim, std::vector<Rat>(dim));
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) A[i][j] = M[i][j] - (i == j ? lam : Rat(0));
        std::vector<size_t> pivcols;
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
            pivcols.push_back(col);
            ++row;
        }
        size_t freec = dim;
        for (size_t c2 = 0; c2 < dim; ++c2)
            if (std::find(pivcols.begin(), pivcols.end(), c2) == pivcols.end()) { freec = c2; break; }
        if (freec == dim) throw std::logic_error("eigenforms_T2: eigenvalue without eigenvector");
        std::vector<Rat> x(dim, Rat(0));
        x[freec] = 1;
        for (size_t i = 0; i < pivcols.size(); ++i) x[pivcols[i]] = -A[i][freec];
        EigenformResult res;
        res.lambda2 = lam;
        res.charpoly_factor = {Rat(1), -lam};
        bool started = false;
        for (size_t j = 0; j < dim; ++j) {
            if (x[j] == 0) continue;
            if (!started) {
                res.form = space[j];
                res.form *= x[j];
                started = true;
            } else
                res.form.add_scaled(space[j], x[j]);
        }
        // normalize by the first nonzero reduced coefficient
        TIndex piv = pivot_key(res.form);
        Rat scale = Rat(1) / res.form.lookup(piv)[0];
        res.form *= scale;
        out.push_back(std::move(res));
    }
    // leftover factor (conjugate blocks) reported without splitting
    std::vector<Rat> rem = cp;
    for (const Rat& lam : roots) {
        std::vector<Rat> q(rem.size() - 1);
        Rat carry = 0;
        for (size_t i = 0; i + 1 < rem.size(); ++i) {
            q[i] = rem[i] + carry;
            carry = q[i] * lam;
        }
        rem = q;
    }
    if (rem.size() > 1 && rem.size() <= dim + 1 && rem.size() > 2) {
        EigenformResult block;
        block.charpoly_factor = rem;
        out.push_back(std::move(block));
    } else if (rem.size() == 2) {
        // should have been caught as a rational root
        throw std::logic_error("eigenforms_T2: missed rational root");
    }
    return out;
}

std::pair<bool, std::optional<TIndex>> maass_check(const Expansion& F) {
    if (F.wt.r != 0) throw std::domain_error("maass_check: scalar forms only");
    int k = F.wt.k;
    for (const TIndex& T : reduced_classes(F.bound)) {
        const CoeffVec* v = F.at_reduced(T);
        if (!v) continue;
        long long g = T.content();
        Rat rhs = 0;
        for (long long d = 1; d <= g; ++d) {
            if (g % d) continue;
            TIndex U{T.a * T.c / (d * d), T.b / d, 1};
            rhs += rpow(Rat(d), k - 1) * F.lookup(U)[0];
        }
        if (rhs != (*v)[0]) return {false, T};
    }
    return {true, std::nullopt};
}

Expansion satoh_bracket(const Expansion& F, const Expansion& G) {
    if (F.wt.r != 0 || G.wt.r != 0)
        throw std::domain_error("satoh_bracket: scalar inputs required");
    if (F.level != G.level) throw std::domain_error("satoh_bracket: level mismatch");
    long long B = std::min(F.bound, G.bound);
    int kF = F.wt.k, kG = G.wt.k;
    Expansion R(WeightData{kF + kG, 1}, F.level, B);
    for (const TIndex& T : reduced_classes(B)) {
        CoeffVec acc(3, Rat(0));
        for (long long a1 = 0; a1 <= T.a; ++a1)
            for (long long c1 = 0; c1 <= T.c; ++c1) {
                long long lim1 = 2 * isqrtll(a1 * c1);
                long long lim2 = 2 * isqrtll((T.a - a1) * (T.c - c1));
                long long lob = std::max(-lim1, T.b - lim2), hib = std::min(lim1, T.b + lim2);
                for (long long b1 = lob; b1 <= hib; ++b1) {
                    TIndex T1{a1, b1, c1}, T2{T.a - a1, T.b - b1, T.c - c1};
                    if (!T1.psd() || !T2.psd()) continue;
                    Rat x = F.lookup(T1)[0];
                    if (x == 0) continue;
                    Rat y = G.lookup(T2)[0];
                    if (y == 0) continue;
                    Rat xy = x * y;
                    acc[0] += xy * (Rat(kG) * a1 - Rat(kF) * T2.a);
                    acc[1] += xy * (Rat(kG) * b1 - Rat(kF) * T2.b);
                    acc[2] += xy * (Rat(kG) * c1 - Rat(kF) * T2.c);
                }
            }
        R.set(T, acc);
    }
    // singular part vanishes: Sym^2-valued bracket of holomorphic forms is cuspidal
    return R;
}

} // namespace sbp::siegel
