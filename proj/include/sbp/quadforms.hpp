#ifndef SBP_QUADFORMS_HPP
#define SBP_QUADFORMS_HPP

#include "sbp/cyclotomic.hpp"
#include "sbp/numeric.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>

namespace sbp::qf {

// Positive D with -D a fundamental imaginary quadratic discriminant.
struct Discriminant {
    long long D;
    explicit Discriminant(long long d);
    int mod4() const { return int(((-D) % 4 + 4) % 4); }  // 0 or 1
    int wE() const { return D == 3 ? 6 : (D == 4 ? 4 : 2); }
};

bool is_fundamental(long long D);

// Primitive positive definite binary quadratic form a x^2 + b xy + c y^2.
struct BQF {
    long long a, b, c;
    long long disc() const { return b * b - 4 * a * c; }  // = -D
    bool operator==(const BQF& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const BQF& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
    bool is_valid() const;
    bool is_reduced() const;
    std::string str() const;
};

struct Mat2z {
    long long m[2][2];
    static Mat2z identity() { return {{{1, 0}, {0, 1}}}; }
    Mat2z operator*(const Mat2z& o) const;
    long long det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

// f composed with gamma: g(x,y) = f((x,y) * gamma^t), i.e. f(px+qy, rx+sy)
BQF apply(const BQF& f, const Mat2z& g);

// Gauss reduction; returned gamma in SL2(Z) satisfies apply(f, gamma) == reduced
std::pair<BQF, Mat2z> reduce(const BQF& f);

// Dirichlet composition of concordant forms, reduced representative returned
BQF compose(const BQF& f, const BQF& g);

struct ClassGroup {
    Discriminant disc;
    std::vector<BQF> reduced;                   // index 0 is the principal form
    std::vector<std::vector<int>> comp;         // h x h composition table
    std::vector<long> structure;                // cyclic factors d1 >= d2 >= ..., product = h
    std::vector<std::vector<long>> coords;      // class -> exponents w.r.t. generators
    std::vector<int> generators;                // class indices

    int h() const { return int(reduced.size()); }
    int wE() const { return disc.wE(); }
    int index_of(const BQF& f) const;           // reduces f first; -1 if absent
    int inverse_of(int c) const;
};

ClassGroup class_group(const Discriminant& D);

struct ClassCharacter {
    std::vector<RootOfUnity> values;  // indexed by reduced class
    long order() const;
    cplx operator()(int c) const { return values[c].value(); }
};

// all h characters, index 0 trivial
std::vector<ClassCharacter> characters(const ClassGroup& G);

struct Mat2q {
    Rat m[2][2];
    Rat det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

Mat2q matrix_SE(const Discriminant& D);
Mat2q bqf_to_matrix(const BQF& f);

// chi_E(n) = kronecker(-D, n)
int kronecker(const Discriminant& D, long long n);

} // namespace sbp::qf

#endif
