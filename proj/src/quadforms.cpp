#include "sbp/quadforms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sbp::qf {

bool is_fundamental(long long D) {
    if (D <= 0) return false;
    long long m4 = ((-D) % 4 + 4) % 4;
    auto squarefree = [](long long n) {
        for (long long p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    if (m4 == 1) return squarefree(D);
    if (m4 == 0) {
        long long q = D / 4;
        return squarefree(q) && (q % 4 == 1 || q % 4 == 2);
    }
    return false;
}

Discriminant::Discriminant(long long d) : D(d) {
    if (!is_fundamental(d))
        throw std::domain_error("Discriminant: -" + std::to_string(d) + " is not fundamental");
}

bool BQF::is_valid() const {
    return a > 0 && disc() < 0 && gcdll(gcdll(a, b), c) == 1;
}

bool BQF::is_reduced() const {
    if (!(std::abs(b) <= a && a <= c)) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
}

std::string BQF::str() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

Mat2z Mat2z::operator*(const Mat2z& o) const {
    Mat2z r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
    return r;
}

BQF apply(const BQF& f, const Mat2z& g) {
    long long p = g.m[0][0], q = g.m[0][1], r = g.m[1][0], s = g.m[1][1];
    BQF out;
    out.a = f.a * p * p + f.b * p * r + f.c * r * r;
    out.b = 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s;
    out.c = f.a * q * q + f.b * q * s + f.c * s * s;
    return out;
}

std::pair<BQF, Mat2z> reduce(const BQF& f) {
    if (f.a <= 0 || f.disc() >= 0)
        throw std::domain_error("reduce: form is not positive definite");
    BQF g = f;
    Mat2z t = Mat2z::identity();
    auto shear = [&](long long k) {  // b -> b + 2ka
        Mat2z s{{{1, k}, {0, 1}}};
        g = apply(g, s);
        t = t * s;
    };
    auto flip = [&]() {  // (a,b,c) -> (c,-b,a)
        Mat2z s{{{0, -1}, {1, 0}}};
        g = apply(g, s);
        t = t * s;
    };
    for (int guard = 0; guard < 10000; ++guard) {
        // normalize: -a < b <= a
        if (!(-g.a < g.b && g.b <= g.a)) {
            long long k = -((2 * g.b + g.a) / (2 * g.a) - ((2 * g.b + g.a) % (2 * g.a) < 0 ? 1 : 0));
            // want b + 2ka in (-a, a]
            while (g.b + 2 * k * g.a > g.a) --k;
            while (g.b + 2 * k * g.a <= -g.a) ++k;
            shear(k);
        }
        if (g.a > g.c) {
            flip();
            continue;
        }
        break;
    }
    if (g.a == g.c && g.b < 0) flip();
    if (!g.is_reduced()) throw std::logic_error("reduce: failed on " + f.str());
    return {g, t};
}

BQF compose(const BQF& f1, const BQF& f2) {
    if (f1.disc() != f2.disc())
        throw std::domain_error("compose: discriminants differ");
    // Dirichlet composition via concordant forms
    Int a1 = f1.a, b1 = f1.b, c2 = f2.c, a2 = f2.a, b2 = f2.b;
    Int s = (b1 + b2) / 2;
    Int g, u0, v0;
    mpz_gcdext(g.backend().data(), u0.backend().data(), v0.backend().data(),
               a1.backend().data(), a2.backend().data());
    Int d, v1, w;
    mpz_gcdext(d.backend().data(), v1.backend().data(), w.backend().data(),
               g.backend().data(), s.backend().data());
    Int v = v0 * v1;
    Int a2d = a2 / d;
    Int A = a1 * a2d / d;
    Int tt = (s - b2) * v - w * c2;
    Int B = b2 + 2 * a2d * tt;
    Int C = (B * B - Int(f1.disc())) / (4 * A);
    BQF r{A.convert_to<long long>(),
          B.convert_to<long long>(),
          C.convert_to<long long>()};
    return reduce(r).first;
}

ClassGroup class_group(const Discriminant& D) {
    ClassGroup G{D, {}, {}, {}, {}, {}};
    long long d = D.D;
    long long amax = isqrtll(d / 3);
    std::vector<BQF> forms;
    for (long long a = 1; a <= amax; ++a) {
        for (long long b = -a; b <= a; ++b) {
            if (((b * b + d) % (4 * a)) != 0) continue;
            long long c = (b * b + d) / (4 * a);
            if (c < a) continue;
            if (b < 0 && (b == -a || a == c)) continue;
            BQF f{a, b, c};
            if (gcdll(gcdll(a, b), c) != 1) continue;
            forms.push_back(f);
        }
    }
    // principal first, rest sorted
    BQF principal{1, (d % 2 == 0) ? 0 : 1, (d % 2 == 0) ? d / 4 : (1 + d) / 4};
    std::sort(forms.begin(), forms.end());
    auto it = std::find(forms.begin(), forms.end(), principal);
    if (it == forms.end()) throw std::logic_error("class_group: principal form missing");
    std::rotate(forms.begin(), it, it + 1);
    std::sort(forms.begin() + 1, forms.end());
    G.reduced = forms;

    int h = int(forms.size());
    std::map<BQF, int> idx;
    for (int i = 0; i < h; ++i) idx[forms[i]] = i;
    G.comp.assign(h, std::vector<int>(h, -1));
    for (int i = 0; i < h; ++i)
        for (int j = i; j < h; ++j) {
            BQF p = compose(forms[i], forms[j]);
            auto k = idx.find(p);
            if (k == idx.end()) throw std::logic_error("class_group: table not closed");
            G.comp[i][j] = G.comp[j][i] = k->second;
        }

    // invariant factors: repeatedly split off a maximal-order cyclic piece
    // from the quotient, tracking coset partitions
    std::vector<int> coset(h);
    std::iota(coset.begin(), coset.end(), 0);  // coset labels, start = trivial subgroup
    int ncosets = h;
    auto quot_mul = [&](int x, int y) { return coset[G.comp[x][y]]; };
    auto order_in_quot = [&](int x) {
        int e = 0, cur = x;
        for (;;) {
            ++e;
            if (coset[cur] == coset[0]) return e;
            cur = G.comp[cur][x];
            if (e > h) throw std::logic_error("class_group: order overflow");
        }
    };
    while (ncosets > 1) {
        int best = -1, besto = 0;
        for (int x = 0; x < h; ++x) {
            int o = order_in_quot(x);
            if (o > besto) { besto = o; best = x; }
        }
        G.structure.push_back(besto);
        G.generators.push_back(best);
        // merge cosets by the subgroup generated by best
        std::vector<int> powers;
        int cur = 0;
        for (int e = 0; e < besto; ++e) {
            powers.push_back(cur);
            cur = G.comp[cur][best];
        }
        std::vector<int> newlab(h, -1);
        int next = 0;
        for (int x = 0; x < h; ++x) {
            if (newlab[x] != -1) continue;
            // coset of x under <old cosets, best>
            for (int p : powers) {
                int y = G.comp[x][p];
                for (int z = 0; z < h; ++z)
                    if (coset[z] == coset[y]) newlab[z] = next;
            }
            ++next;
        }
        coset = newlab;
        ncosets = next;
        (void)quot_mul;
    }
    // coordinates of every class w.r.t. generators (brute force over exponent boxes)
    size_t t = G.structure.size();
    G.coords.assign(h, {});
    std::vector<long> exps(t, 0);
    for (;;) {
        int cls = 0;
        for (size_t i = 0; i < t; ++i)
            for (long e = 0; e < exps[i]; ++e) cls = G.comp[cls][G.generators[i]];
        if (G.coords[cls].empty() || cls == 0) G.coords[cls] = exps;
        // increment
        size_t i = 0;
        for (; i < t; ++i) {
            if (++exps[i] < G.structure[i]) break;
            exps[i] = 0;
        }
        if (i == t) break;
    }
    G.coords[0].assign(t, 0);
    for (int x = 0; x < h; ++x)
        if (G.coords[x].empty())
            throw std::logic_error("class_group: generators do not span");
    return G;
}

int ClassGroup::index_of(const BQF& f) const {
    BQF r = reduce(f).first;
    for (int i = 0; i < h(); ++i)
        if (reduced[i] == r) return i;
    return -1;
}

int ClassGroup::inverse_of(int c) const {
    for (int j = 0; j < h(); ++j)
        if (comp[c][j] == 0) return j;
    throw std::logic_error("inverse_of: no inverse");
}

long ClassCharacter::order() const {
    long m = 1;
    for (const auto& v : values) m = std::lcm(m, v.den);
    return m;
}

std::vector<ClassCharacter> characters(const ClassGroup& G) {
    int h = G.h();
    size_t t = G.structure.size();
    std::vector<ClassCharacter> out;
    std::vector<long> m(t, 0);
    for (;;) {
        ClassCharacter chi;
        chi.values.resize(h);
        for (int c = 0; c < h; ++c) {
            RootOfUnity z(0, 1);
            for (size_t i = 0; i < t; ++i)
                z = z * RootOfUnity(m[i] * G.coords[c][i], G.structure[i]);
            chi.values[c] = z;
        }
        out.push_back(chi);
        if (t == 0) break;
        size_t i = 0;
        for (; i < t; ++i) {
            if (++m[i] < G.structure[i]) break;
            m[i] = 0;
        }
        if (i == t) break;
    }
    // trivial character first, then by order
    std::stable_sort(out.begin(), out.end(), [](const ClassCharacter& x, const ClassCharacter& y) {
        return x.order() < y.order();
    });
    return out;
}

Mat2q matrix_SE(const Discriminant& D) {
    Mat2q S;
    if (D.mod4() == 0) {
        S.m[0][0] = 1; S.m[0][1] = 0;
        S.m[1][0] = 0; S.m[1][1] = Rat(D.D, 4);
    } else {
        S.m[0][0] = 1; S.m[0][1] = Rat(1, 2);
        S.m[1][0] = Rat(1, 2); S.m[1][1] = Rat(1 + D.D, 4);
    }
    return S;
}

Mat2q bqf_to_matrix(const BQF& f) {
    Mat2q S;
    S.m[0][0] = f.a; S.m[0][1] = Rat(f.b, 2);
    S.m[1][0] = Rat(f.b, 2); S.m[1][1] = f.c;
    return S;
}

int kronecker(const Discriminant& D, long long n) {
    return kronecker_symbol(Int(-D.D), Int(n));
}

} // namespace sbp::qf
