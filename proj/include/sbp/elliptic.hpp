#ifndef SBP_ELLIPTIC_HPP
#define SBP_ELLIPTIC_HPP

#include "sbp/numeric.hpp"

namespace sbp::ell {

// q-expansions as coefficient vectors a[0..N] (a[0] = constant term)
using QExp = std::vector<Rat>;

QExp eisenstein_q(int k, long long N);          // 1 - (2k/B_k) sum sigma_{k-1} q^n
QExp eisenstein2_level(long long p, long long N);  // E2(z) - p E2(pz), weight 2 on Gamma0(p)
QExp delta_q(long long N);                      // Ramanujan Delta
// eta(d1 z)^{e1} * eta(d2 z)^{e2} ... ; total weight sum(e)/2, q-power sum(d e)/24
QExp eta_product(const std::vector<std::pair<long long, int>>& factors, long long N);

QExp mul(const QExp& a, const QExp& b, long long N);
QExp pow(const QExp& a, int e, long long N);

// T_p on weight-k level-N q-expansions, p coprime to level:
// b(n) = a(pn) + p^{k-1} a(n/p)
QExp hecke_Tp(const QExp& a, long long p, int k);

// exact simultaneous T_2 eigenbasis of the span of the given cusp forms;
// returns (eigenvalue field disc d, per-form data). Rational case: d = 1.
struct EllEigenform {
    // a_n in Q(sqrt(d)): a_n = u_n + v_n sqrt(d); v = 0 throughout when d = 1
    long long d = 1;
    std::vector<Rat> u, v;
    int k = 0;        // weight
    long long level = 1;
    cplx a(long long n) const;
    Rat a_rat(long long n) const;  // requires d = 1
};

// diagonalize T_2 on an exact basis of cusp forms (dim <= 4 at desk scale);
// eigenvalues rational or quadratic
std::vector<EllEigenform> eigenforms(const std::vector<QExp>& basis, int k, long long level,
                                     long long N);

} // namespace sbp::ell

#endif
