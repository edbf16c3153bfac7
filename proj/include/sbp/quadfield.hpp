#ifndef SBP_QUADFIELD_HPP
#define SBP_QUADFIELD_HPP

#include "sbp/numeric.hpp"

namespace sbp {

// x + y*sqrt(rad) with rational x, y; rad a fixed non-square integer.
struct QuadElt {
    Rat x, y;
    long long rad = 0;

    QuadElt() : x(0), y(0), rad(0) {}
    QuadElt(Rat v) : x(std::move(v)), y(0), rad(0) {}
    QuadElt(Rat xx, Rat yy, long long r) : x(std::move(xx)), y(std::move(yy)), rad(r) {}

    bool is_rational() const { return y == 0; }
    bool is_zero() const { return x == 0 && y == 0; }
    QuadElt conj() const { return {x, -y, rad}; }
    Rat norm() const { return x * x - Rat(rad) * y * y; }

    QuadElt operator-() const { return {-x, -y, rad}; }
    QuadElt operator+(const QuadElt& o) const;
    QuadElt operator-(const QuadElt& o) const;
    QuadElt operator*(const QuadElt& o) const;
    QuadElt operator/(const QuadElt& o) const;
    bool operator==(const QuadElt& o) const;

    cplx value() const;  // principal square root: sqrt(rad) = i sqrt(|rad|) for rad < 0
};

QuadElt operator*(const Rat& a, const QuadElt& b);

// small dense matrix over QuadElt
struct QMat {
    int rows = 0, cols = 0;
    std::vector<QuadElt> a;
    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(r * c) {}
    QuadElt& operator()(int i, int j) { return a[i * cols + j]; }
    const QuadElt& operator()(int i, int j) const { return a[i * cols + j]; }
    QMat operator*(const QMat& o) const;
};

// Gaussian elimination over the field Q(sqrt(rad)); returns rank,
// transforms m in place to row echelon form, optionally tracking a rhs.
int qmat_row_echelon(QMat& m);

} // namespace sbp

#endif
