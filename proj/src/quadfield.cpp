#include "sbp/quadfield.hpp"

#include <cmath>

namespace sbp {

static long long common_rad(const QuadElt& a, const QuadElt& b) {
    if (a.rad == b.rad) return a.rad;
    if (a.y == 0) return b.rad;
    if (b.y == 0) return a.rad;
    throw std::domain_error("QuadElt: mixed radicands");
}

QuadElt QuadElt::operator+(const QuadElt& o) const {
    return {x + o.x, y + o.y, common_rad(*this, o)};
}
QuadElt QuadElt::operator-(const QuadElt& o) const {
    return {x - o.x, y - o.y, common_rad(*this, o)};
}
QuadElt QuadElt::operator*(const QuadElt& o) const {
    long long r = common_rad(*this, o);
    return {x * o.x + Rat(r) * y * o.y, x * o.y + y * o.x, r};
}
QuadElt QuadElt::operator/(const QuadElt& o) const {
    Rat n = o.norm();
    if (n == 0) throw std::domain_error("QuadElt: division by zero");
    QuadElt num = *this * o.conj();
    return {num.x / n, num.y / n, common_rad(*this, o)};
}
bool QuadElt::operator==(const QuadElt& o) const { return x == o.x && y == o.y; }

cplx QuadElt::value() const {
    double xd = to_double(x), yd = to_double(y);
    if (rad >= 0) return cplx(xd + yd * std::sqrt(double(rad)), 0.0);
    return cplx(xd, yd * std::sqrt(double(-rad)));
}

QuadElt operator*(const Rat& a, const QuadElt& b) { return QuadElt(a) * b; }

QMat QMat::operator*(const QMat& o) const {
    QMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            if ((*this)(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols; ++j)
                r(i, j) = r(i, j) + (*this)(i, k) * o(k, j);
        }
    return r;
}

int qmat_row_echelon(QMat& m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows; ++i)
            if (!m(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rank, j));
        QuadElt inv = QuadElt(Rat(1)) / m(rank, col);
        for (int j = col; j < m.cols; ++j) m(rank, j) = m(rank, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank || m(i, col).is_zero()) continue;
            QuadElt f = m(i, col);
            for (int j = col; j < m.cols; ++j)
                m(i, j) = m(i, j) - f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

} // namespace sbp
