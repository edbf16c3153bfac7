#include "sbp/bessel.hpp"

namespace sbp::bessel {

Rat pairing_n(const CoeffVec& P, const CoeffVec& Q) {
    if (P.size() != Q.size()) throw std::domain_error("pairing_n: dimension mismatch");
    int n = int(P.size()) - 1;
    Rat s = 0;
    // P_i pairs with Q_{n-i}: indices are Y-degrees, i + j = n
    for (int i = 0; i <= n; ++i) {
        if (P[i] == 0 || Q[n - i] == 0) continue;
        Rat w = rat_binomial(unsigned(n), unsigned(i));
        // (X^{n-i} Y^i, X^{i} Y^{n-i}) with the first slot Y-degree i:
        // formula indexes by X-degree; X-degree of slot one is n-i
        s += ((n - i) % 2 ? -w : w) * P[i] * Q[n - i];
    }
    return s;
}

double ScaledPoly::value_prefactor() const {
    return to_double(prefactor) * std::pow(double(D), 0.5 * sqrtD_power);
}

ScaledPoly q_poly(const qf::Mat2q& S, int r, int k, long long D) {
    if (S.det() <= 0) throw std::domain_error("q_poly: S must be positive definite");
    ScaledPoly out;
    out.D = D;
    // ((X,Y) S (X,Y)^t)^r : quadratic q = s11 X^2 + 2 s12 XY + s22 Y^2
    CoeffVec q = {S.m[0][0], 2 * S.m[0][1], S.m[1][1]};  // indexed by Y-degree
    CoeffVec acc = {Rat(1)};
    for (int i = 0; i < r; ++i) {
        CoeffVec nxt(acc.size() + 2, Rat(0));
        for (size_t a = 0; a < acc.size(); ++a)
            for (size_t b = 0; b < 3; ++b) nxt[a + b] += acc[a] * q[b];
        acc = std::move(nxt);
    }
    out.poly = acc;
    int m = 2 * r + k;
    // (det S)^{-m/2} = (D/4)^{-m/2} = 2^m D^{-m/2}
    if (m % 2 == 0) {
        out.prefactor = rpow(Rat(2), m) * rpow(Rat(D), -(m / 2));
        out.sqrtD_power = 0;
    } else {
        out.prefactor = rpow(Rat(2), m) * rpow(Rat(D), -((m - 1) / 2));
        out.sqrtD_power = -1;
    }
    return out;
}

namespace {

// substitute (X,Y) -> (X,Y) G for a QuadElt matrix G, on C[X,Y]_n vectors
std::vector<QuadElt> subst(const std::vector<QuadElt>& v, const QuadElt G[2][2], long long rad) {
    int n = int(v.size()) - 1;
    QuadElt zero(Rat(0), Rat(0), rad), one(Rat(1), Rat(0), rad);
    std::vector<std::vector<QuadElt>> powA(n + 1), powB(n + 1);
    powA[0] = {one};
    powB[0] = {one};
    for (int i = 1; i <= n; ++i) {
        powA[i].assign(i + 1, zero);
        powB[i].assign(i + 1, zero);
        for (int j = 0; j < i; ++j) {
            powA[i][j] = powA[i][j] + powA[i - 1][j] * G[0][0];
            powA[i][j + 1] = powA[i][j + 1] + powA[i - 1][j] * G[1][0];
            powB[i][j] = powB[i][j] + powB[i - 1][j] * G[0][1];
            powB[i][j + 1] = powB[i][j + 1] + powB[i - 1][j] * G[1][1];
        }
    }
    std::vector<QuadElt> out(n + 1, zero);
    for (int i = 0; i <= n; ++i) {
        if (v[i].is_zero()) continue;
        for (int j = 0; j <= n - i; ++j)
            for (int l = 0; l <= i; ++l)
                out[j + l] = out[j + l] + v[i] * powA[n - i][j] * powB[i][l];
    }
    return out;
}

} // namespace

CoeffVec TorusProjector::apply(const CoeffVec& v) const {
    CoeffVec out(v.size(), Rat(0));
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += mat[i][j] * v[j];
    return out;
}

TorusProjector torus_projector(const qf::Mat2q& S, int n, long long D) {
    if (S.det() <= 0) throw std::domain_error("torus_projector: singular S");
    if (n % 2) throw std::domain_error("torus_projector: odd n has no invariants");
    TorusProjector P;
    P.n = n;
    P.D = D;
    long long rad = -D;
    // infinitesimal torus generator W = S^{-1} J, eigenvalues +- 2 sqrt(-D)/D
    Rat det = S.det();
    Rat w11 = S.m[0][1] / det, w12 = S.m[1][1] / det;
    Rat w21 = -S.m[0][0] / det, w22 = -S.m[0][1] / det;
    // rows of N are left eigenvectors u^t of W (i.e. eigenvectors of W^t)
    // W^t u = lam u with lam = 2 sqrt(-D)/D:
    // (w11 - lam) u1 + w21 u2 = 0  ->  u = (w21, lam - w11)
    QuadElt lam(Rat(0), Rat(2, D), rad);
    QuadElt u1(w21, Rat(0), rad), u2 = lam - QuadElt(w11, Rat(0), rad);
    QuadElt N[2][2] = {{u1, u2}, {u1.conj(), u2.conj()}};
    // N^{-1}
    QuadElt dN = N[0][0] * N[1][1] - N[0][1] * N[1][0];
    if (dN.is_zero()) throw std::logic_error("torus_projector: degenerate eigenbasis");
    QuadElt Ninv[2][2];
    Ninv[0][0] = N[1][1] / dN;
    Ninv[0][1] = (-N[0][1]) / dN;
    Ninv[1][0] = (-N[1][0]) / dN;
    Ninv[1][1] = N[0][0] / dN;
    P.mat.assign(n + 1, std::vector<Rat>(n + 1, Rat(0)));
    for (int j = 0; j <= n; ++j) {
        // basis vector e_j = X^{n-j} Y^j -> xi coordinates via (X,Y) = (xi,eta) N
        std::vector<QuadElt> e(n + 1, QuadElt(Rat(0), Rat(0), rad));
        e[j] = QuadElt(Rat(1), Rat(0), rad);
        std::vector<QuadElt> xi = subst(e, N, rad);
        // keep only the invariant component xi^{n/2} eta^{n/2} (Y-degree n/2)
        std::vector<QuadElt> mid(n + 1, QuadElt(Rat(0), Rat(0), rad));
        mid[n / 2] = xi[n / 2];
        std::vector<QuadElt> back = subst(mid, Ninv, rad);
        for (int i = 0; i <= n; ++i) {
            if (back[i].y != 0)
                throw std::logic_error("torus_projector: non-rational entry");
            P.mat[i][j] = back[i].x;
        }
    }
    return P;
}

BesselReport bessel_vector(const Expansion& Phi, const qf::ClassGroup& G,
                           const qf::ClassCharacter& Lambda, int char_index) {
    long long D = G.disc.D;
    if (Phi.bound < D) throw std::domain_error("bessel_vector: expansion bound below D");
    if ((int)Lambda.values.size() != G.h())
        throw std::domain_error("bessel_vector: character/group mismatch");
    BesselReport rep;
    rep.D = D;
    rep.char_index = char_index;
    rep.wE = G.wE();
    int n = Phi.wt.n();
    TorusProjector proj = torus_projector(qf::matrix_SE(G.disc), n, D);

    std::vector<cplx> sum(n + 1, cplx(0, 0));
    bool rational_sum = true;
    CoeffVec rsum(n + 1, Rat(0));
    for (int c = 0; c < G.h(); ++c) {
        const qf::BQF& f = G.reduced[c];
        CoeffVec a = Phi.lookup(siegel::TIndex{f.a, f.b, f.c});
        rep.per_class.push_back(a);
        RootOfUnity z = Lambda.values[c].inverse();
        if (z.den <= 2) {
            Rat zv = (z.num == 0) ? 1 : -1;
            for (int i = 0; i <= n; ++i) rsum[i] += zv * a[i];
        } else
            rational_sum = false;
        cplx zc = z.value();
        for (int i = 0; i <= n; ++i) sum[i] += zc * to_cplx(a[i]);
    }
    Rat winv(1, G.wE());
    ScaledPoly Q = q_poly(qf::matrix_SE(G.disc), Phi.wt.r, Phi.wt.k, D);
    if (rational_sum) {
        CoeffVec pv = proj.apply(rsum);
        for (auto& x : pv) x *= winv;
        rep.vectorB.assign(n + 1, cplx(0, 0));
        for (int i = 0; i <= n; ++i) rep.vectorB[i] = to_cplx(pv[i]);
        Rat sc = pairing_n(pv, Q.poly) * Q.prefactor;
        rep.scalar_rat = sc;
        rep.sqrtD_power = Q.sqrtD_power;
        rep.scalarB = to_cplx(sc) * std::pow(double(D), 0.5 * Q.sqrtD_power);
    } else {
        std::vector<cplx> pv(n + 1, cplx(0, 0));
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) pv[i] += to_cplx(proj.mat[i][j]) * sum[j];
            pv[i] *= to_double(winv);
        }
        rep.vectorB = pv;
        cplx sc(0, 0);
        int nn = n;
        for (int i = 0; i <= nn; ++i) {
            Rat w = rat_binomial(unsigned(nn), unsigned(i));
            Rat sgn = ((nn - i) % 2) ? -w : w;
            sc += to_cplx(sgn) * pv[i] * to_cplx(Q.poly[nn - i]);
        }
        rep.scalarB = sc * to_cplx(Q.prefactor) * std::pow(double(D), 0.5 * Q.sqrtD_power);
    }
    return rep;
}

cplx bessel_scalar(const BesselReport& rep) { return rep.scalarB; }

} // namespace sbp::bessel
