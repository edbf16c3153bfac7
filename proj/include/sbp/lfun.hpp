#ifndef SBP_LFUN_HPP
#define SBP_LFUN_HPP

#include "sbp/quadforms.hpp"

#include <functional>
#include <optional>

namespace sbp::lfun {

// local factor at p: polynomial in X = p^{-s}, constant term 1
struct EulerFactor {
    long long p = 0;
    std::vector<cplx> c;                    // ascending, c[0] = 1
    std::optional<std::vector<Rat>> exact;  // set when coefficients are rational
    int degree() const { return int(c.size()) - 1; }
    std::vector<cplx> reciprocal_roots() const;
};

EulerFactor factor_from_roots(long long p, const std::vector<cplx>& roots);

// degree-4 spinor factor in the analytic (unitary) normalization, from the
// arithmetic eigenvalues lam_p, lam_{p^2} of a weight (k, r) eigenform
EulerFactor spinor_factor(const Rat& lam_p, const Rat& lam_p2, int k, int r, long long p);
// arithmetic-normalization polynomial (exact), motive weight w = 2k + 2r - 3
std::vector<Rat> spinor_factor_arithmetic(const Rat& lam_p, const Rat& lam_p2, int k, int r,
                                          long long p);

// degree-2 analytic factor of an elliptic eigenform a_p, weight kappa
EulerFactor gl2_factor(cplx a_p, int kappa, long long p, long long level);

EulerFactor tensor_factor(const EulerFactor& spin, const EulerFactor& gl2);
EulerFactor adjoint_factor(const EulerFactor& spin);

// AI(Lambda) local data: theta-series coefficients
struct ThetaForm {
    long long D;
    int char_index;
    std::vector<cplx> a;  // a[1..M]
    bool cuspidal;        // Lambda nontrivial
};

ThetaForm ai_theta(const qf::ClassGroup& G, const qf::ClassCharacter& Lambda, long long M,
                   int char_index = -1);

// archimedean constants of the central-value and adjoint factors
struct GammaConstant {
    Rat rational;     // exact rational multiplier
    int two_pi_pow;   // exponent of (2 pi)
    double value() const;
    bool operator==(const GammaConstant& o) const {
        return rational == o.rational && two_pi_pow == o.two_pi_pow;
    }
};

std::pair<GammaConstant, GammaConstant> gamma_constants(int k, int r);

Rat jp_factor(long long p, const std::string& type);

// ---- analytic evaluation ----

struct LSeries {
    int degree = 0;
    double conductor = 1;               // N in Lambda(s) = N^{s/2} gamma(s) L(s)
    std::vector<double> gamma_shifts;   // Gamma_R(s + mu_j) parameters
    // Dirichlet coefficients of L(s) = sum a_n n^{-s} in the analytic
    // normalization; provider returns a_n and whether it is complete
    std::function<cplx(long long)> coeff;
    std::function<bool(long long)> coeff_known = nullptr;
    double ramanujan_bound_per_factor = 1.0;  // |a_p| <= degree * bound heuristics
    int sign_hint = 0;                  // 0: fit numerically
    bool has_pole = false;              // simple poles at s = 0, 1 (zeta-like)
    double residue = 0;                 // residue of Lambda at s = 1
};

struct CentralValue {
    double value;
    double error_estimate;
    int fitted_sign;
    long long terms_used;
};

// smoothed approximate-functional-equation evaluation at s0 in (0, 1]
CentralValue central_value(const LSeries& L, double s0);

// completed Lambda(s) for self-dual series (diagnostics, functional equation tests)
double lambda_completed(const LSeries& L, double s0);

// Dirichlet L(1, chi_{-D}) via the digamma closed form, ~1e-12
double dirichlet_L1(long long D);

// multiplicative expansion: Dirichlet coefficients from local factors
// (factors supplied for p <= P; coefficient marked incomplete beyond)
struct CoeffStream {
    std::map<long long, EulerFactor> local;
    long long pmax = 0;
    std::vector<cplx> a;       // filled up to N
    std::vector<bool> known;
    void build(long long N);
};

} // namespace sbp::lfun

#endif
