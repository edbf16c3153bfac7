#ifndef SBP_BESSEL_HPP
#define SBP_BESSEL_HPP

#include "sbp/quadfield.hpp"
#include "sbp/siegel.hpp"

namespace sbp::bessel {

using siegel::CoeffVec;
using siegel::Expansion;

// (X^i Y^{n-i}, X^j Y^{n-j})_n = (-1)^i binom(n, i) if i + j = n, else 0;
// vectors indexed by the Y-degree
Rat pairing_n(const CoeffVec& P, const CoeffVec& Q);

// Q_{S,rho}(X, Y) = ((X,Y) S (X,Y)^t)^r scaled by (det S)^{-(2r+k)/2}.
// The polynomial part is exact; the prefactor is q * D^{e/2} with rational q.
struct ScaledPoly {
    CoeffVec poly;     // degree 2r
    Rat prefactor;     // rational part
    int sqrtD_power;   // additional factor D^{power/2}
    long long D;
    double value_prefactor() const;
};

ScaledPoly q_poly(const qf::Mat2q& S, int r, int k, long long D);

// projector onto the rho-invariants of the compact torus T_S^1(R);
// exact, entries rational (computed through Q(sqrt(-D)))
struct TorusProjector {
    int n;
    long long D;
    std::vector<std::vector<Rat>> mat;  // (n+1) x (n+1)
    CoeffVec apply(const CoeffVec& v) const;
};

TorusProjector torus_projector(const qf::Mat2q& S, int n, long long D);

struct BesselReport {
    long long D;
    int char_index;
    int wE;
    std::vector<CoeffVec> per_class;    // a(Phi, S_c) per reduced class
    std::vector<cplx> vectorB;          // projected weighted sum
    cplx scalarB;                       // (B_Lambda, Q_{S,rho})_{2r}
    // exact value of the scalar period when the character sum is rational:
    // scalarB = scalar_rat * D^{sqrtD_power/2}
    std::optional<Rat> scalar_rat;
    int sqrtD_power = 0;
};

BesselReport bessel_vector(const Expansion& Phi, const qf::ClassGroup& G,
                           const qf::ClassCharacter& Lambda, int char_index = -1);

// scalar specialization helper: for r = 0, scalarB = 2^k D^{-k/2} B
cplx bessel_scalar(const BesselReport& rep);

} // namespace sbp::bessel

#endif
