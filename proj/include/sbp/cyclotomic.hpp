#ifndef SBP_CYCLOTOMIC_HPP
#define SBP_CYCLOTOMIC_HPP

#include "sbp/numeric.hpp"

namespace sbp {

// Exact root of unity e^{2 pi i num/den}, kept as a reduced fraction of a turn.
struct RootOfUnity {
    long num = 0;
    long den = 1;

    RootOfUnity() = default;
    RootOfUnity(long n, long d);

    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity inverse() const;
    RootOfUnity conj() const { return inverse(); }
    bool operator==(const RootOfUnity& o) const { return num == o.num && den == o.den; }
    bool is_one() const { return num == 0; }
    long order() const { return den; }
    cplx value() const;
};

// Exact sum of roots of unity represented in Z[x]/Phi_m(x).
class CycloSum {
  public:
    explicit CycloSum(long m);
    void add(const RootOfUnity& z, long mult = 1);
    bool is_zero() const;
    bool is_integer(Int& out) const;
    long modulus() const { return m_; }

  private:
    long m_;
    std::vector<Int> coeff_;          // degree < deg(Phi_m)
    std::vector<Int> phi_;            // Phi_m, monic, ascending
    std::vector<std::vector<Int>> xk_reduced_;  // x^k mod Phi_m for k < m
};

// cyclotomic polynomial Phi_m, ascending coefficients, exact
std::vector<Int> cyclotomic_poly(long m);

} // namespace sbp

#endif
