#ifndef SBP_SIEGEL_HPP
#define SBP_SIEGEL_HPP

#include "sbp/quadforms.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <unordered_map>

namespace sbp::siegel {

using CoeffVec = std::vector<Rat>;
using qf::Mat2z;

// T = [[a, b/2],[b/2, c]] semi-integral
struct TIndex {
    long long a, b, c;
    long long det4() const { return 4 * a * c - b * b; }
    long long content() const { return gcdll(gcdll(a, b), c); }
    bool psd() const { return a >= 0 && c >= 0 && det4() >= 0; }
    bool pd() const { return a > 0 && det4() > 0; }
    bool operator==(const TIndex& o) const { return a == o.a && b == o.b && c == o.c; }
};

uint64_t tkey(const TIndex& T);

// returns (T0, U) with T = U T0 U^t, T0 the reduced class representative
// (|b| <= a <= c, b >= 0 on ties), det U = +-1.
// Singular pd inputs reduce to diag(content, 0).
std::pair<TIndex, Mat2z> gl2z_reduce_T(const TIndex& T);

struct WeightData {
    int k = 0;  // determinant weight
    int r = 0;  // Sym^{2r}
    int n() const { return 2 * r; }
    int dim() const { return 2 * r + 1; }
    bool operator==(const WeightData& o) const { return k == o.k && r == o.r; }
};

// rho(g) v for v in C[X,Y]_n stored as v_i = coeff of X^{n-i} Y^i,
// rho(g) P (X,Y) = det(g)^k P((X,Y) g). Rational g only.
CoeffVec rho_apply(const WeightData& wt, const qf::Mat2q& g, const CoeffVec& v);
CoeffVec rho_apply(const WeightData& wt, const Mat2z& g, const CoeffVec& v);

class Expansion {
  public:
    WeightData wt;
    int level = 1;
    long long bound = 0;       // reduced pd classes stored for 4 det T <= bound
    long long sing_bound = 0;  // rank-1 values stored for T ~ diag(n,0), n <= sing_bound
    std::unordered_map<uint64_t, CoeffVec> pd;
    std::vector<Rat> sing;  // sing[n]; sing[0] is the constant term

    Expansion() = default;
    Expansion(WeightData w, int lev, long long B);

    CoeffVec zero_vec() const { return CoeffVec(wt.dim(), Rat(0)); }
    const CoeffVec* at_reduced(const TIndex& T) const;
    // arbitrary semi-integral psd T, applies the transformation law
    CoeffVec lookup(const TIndex& T) const;
    Rat sing_at(long long n) const;
    bool is_cuspidal() const;

    void set(const TIndex& reducedT, CoeffVec v);
    std::vector<TIndex> keys_sorted() const;

    Expansion& operator*=(const Rat& s);
    Expansion& add_scaled(const Expansion& o, const Rat& s);

    void write(std::ostream& os) const;
    static Expansion read(std::istream& is);
};

// all reduced pd representatives with 4 det T <= B
std::vector<TIndex> reduced_classes(long long B);

// exact convolution product of scalar-valued expansions (level multiplies are
// not supported; inputs must share the level)
Expansion multiply(const Expansion& F, const Expansion& G, int threads = 2);

// brute-force convolution over unreduced lattice points; test oracle
CoeffVec multiply_single_key_bruteforce(const Expansion& F, const Expansion& G, const TIndex& T);

// degree-2 Siegel Eisenstein series, normalized a(0) = 1, exact
Expansion eisenstein(int k, long long B);
// elliptic Eisenstein q-expansion 1 - (2k/B_k) sum sigma_{k-1}(n) q^n
std::vector<Rat> eisenstein_elliptic(int k, long long N);
// Siegel Phi operator: rank-1 coefficient sequence a(diag(n,0))
std::vector<Rat> phi_operator(const Expansion& F, long long N);

// Cohen H(r, N) as an exact rational (r >= 1, N >= 0, H = 0 unless N = 0,3 mod 4)
Rat cohen_H(int r, long long N);

std::pair<Expansion, Expansion> igusa_cusp_generators(long long B);

// cuspidal part of the weight-k monomial span in E4, E6, chi10, chi12
std::vector<Expansion> cusp_space(int k, long long B);

// ---- theta machinery (independent constructions used as oracles) ----

// product of the squares of the ten even theta constants; proportional to chi10
Expansion chi10_theta_product(long long B);
// genus-2 theta series of the E8 root lattice (equals weight-4 Eisenstein)
CoeffVec e8_theta_coefficient(const TIndex& T);

// ---- Hecke machinery ----

struct HeckeCoset {  // g = [[A, B],[0, D]], A^t D = mu, B^t D symmetric
    long long A[2][2];
    Rat B[2][2];
    long long mu;
    long long nB;  // size of the translation class this representative stands for
};

// all integral similitude-mu cosets in block-triangular form (mu = p or p^2)
std::vector<HeckeCoset> hecke_cosets(long long mu);

// classical T(p); output valid for 4 det T <= F.bound / p^2
Expansion hecke_Tp(const Expansion& F, long long p);
// full similitude-p^2 operator; output valid for 4 det T <= F.bound / p^4
Expansion hecke_Tp2(const Expansion& F, long long p);

// single-coefficient evaluation (demand driven, avoids building whole output)
CoeffVec hecke_coeff(const Expansion& F, long long mu, const TIndex& T);

struct HeckeEigenData {
    int level = 1;
    WeightData wt;
    std::map<long long, std::pair<Rat, Rat>> eigen;  // p -> (lam_p, lam_{p^2}); lam_p2 may be unset
    std::map<long long, bool> has_p2;
    std::map<long long, int> atkin_lehner;
    std::map<long long, std::string> local_type;
};

struct EigenformResult {
    Expansion form;                               // exact when rational eigenvalue
    std::optional<Rat> lambda2;                   // rational T(2) eigenvalue if exact
    std::vector<Rat> charpoly_factor;             // minimal factor of T(2) char poly
};

// simultaneous eigenform split of a space under T(2); rational eigenvectors
// extracted exactly, conjugate blocks reported by their minimal factor
std::vector<EigenformResult> eigenforms_T2(const std::vector<Expansion>& space);

// rational T(p)/T(p^2) eigenvalues of an exact eigenform via coefficient ratio
Rat eigenvalue_Tp(const Expansion& F, long long p);
Rat eigenvalue_Tp2(const Expansion& F, long long p);

// Maass relation test; returns witness T on failure
std::pair<bool, std::optional<TIndex>> maass_check(const Expansion& F);

// Satoh bracket of scalar forms: Sym^2-valued, determinant weight kF + kG
Expansion satoh_bracket(const Expansion& F, const Expansion& G);

} // namespace sbp::siegel

#endif
