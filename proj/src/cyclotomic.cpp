#include "sbp/cyclotomic.hpp"

#include <cmath>
#include <numeric>

namespace sbp {

RootOfUnity::RootOfUnity(long n, long d) {
    if (d <= 0) throw std::domain_error("RootOfUnity: denominator must be positive");
    n %= d;
    if (n < 0) n += d;
    long g = std::gcd(n, d);
    if (n == 0) {
        num = 0; den = 1;
    } else {
        num = n / g; den = d / g;
    }
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    long d = std::lcm(den, o.den);
    return RootOfUnity(num * (d / den) + o.num * (d / o.den), d);
}

RootOfUnity RootOfUnity::inverse() const { return RootOfUnity(-num, den); }

cplx RootOfUnity::value() const {
    double t = 2.0 * 3.14159265358979323846 * double(num) / double(den);
    return cplx(std::cos(t), std::sin(t));
}

static std::vector<Int> poly_divide_exact(const std::vector<Int>& a, const std::vector<Int>& b) {
    // exact division of monic-ish integer polys (b divides a)
    std::vector<Int> r = a, q(a.size() - b.size() + 1, 0);
    for (long i = (long)q.size() - 1; i >= 0; --i) {
        Int c = r[i + b.size() - 1] / b.back();
        q[i] = c;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
    }
    return q;
}

std::vector<Int> cyclotomic_poly(long m) {
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<Int> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d) continue;
        num = poly_divide_exact(num, cyclotomic_poly(d));
    }
    return num;
}

CycloSum::CycloSum(long m) : m_(m), phi_(cyclotomic_poly(m)) {
    size_t deg = phi_.size() - 1;
    coeff_.assign(deg, 0);
    // precompute x^k mod Phi_m
    xk_reduced_.assign(m, std::vector<Int>(deg, 0));
    std::vector<Int> cur(deg, 0);
    cur[0] = 1;
    xk_reduced_[0] = cur;
    for (long k = 1; k < m; ++k) {
        // multiply by x
        std::vector<Int> nxt(deg, 0);
        Int top = cur[deg - 1];
        for (size_t i = deg - 1; i > 0; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0)
            for (size_t i = 0; i < deg; ++i) nxt[i] -= top * phi_[i];
        cur = nxt;
        xk_reduced_[k] = cur;
    }
}

void CycloSum::add(const RootOfUnity& z, long mult) {
    if (m_ % z.den) throw std::domain_error("CycloSum: order does not divide modulus");
    long k = z.num * (m_ / z.den) % m_;
    const auto& v = xk_reduced_[k];
    for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += mult * v[i];
}

bool CycloSum::is_zero() const {
    for (const auto& c : coeff_)
        if (c != 0) return false;
    return true;
}

bool CycloSum::is_integer(Int& out) const {
    for (size_t i = 1; i < coeff_.size(); ++i)
        if (coeff_[i] != 0) return false;
    out = coeff_[0];
    return true;
}

} // namespace sbp
