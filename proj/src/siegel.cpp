#include "sbp/siegel.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace sbp::siegel {

uint64_t tkey(const TIndex& T) {
    // a, c < 2^21, |b| <= 2^20
    return (uint64_t(T.a) << 42) | (uint64_t(T.c) << 21) | uint64_t(T.b + (1 << 20));
}

static Mat2z inv_transpose_unimodular(const Mat2z& g) {
    long long d = g.det();
    if (d != 1 && d != -1) throw std::logic_error("inv_transpose: not unimodular");
    // g^{-1} = adj(g)/d ; return (g^{-1})^t
    Mat2z r{{{g.m[1][1] / d, -g.m[1][0] / d}, {-g.m[0][1] / d, g.m[0][0] / d}}};
    return r;
}

std::pair<TIndex, Mat2z> gl2z_reduce_T(const TIndex& T) {
    if (!T.psd()) throw std::domain_error("gl2z_reduce_T: T not positive semi-definite");
    if (T.a == 0 && T.b == 0 && T.c == 0) return {T, Mat2z::identity()};
    if (T.det4() == 0) {
        // rank 1: T = n u u^t with u primitive, n the content
        long long n = T.content();
        long long a = T.a / n, b = T.b / n, c = T.c / n;
        long long u0, u1;
        if (a != 0) {
            long long g = gcdll(2 * a, b);
            u0 = 2 * a / g; u1 = b / g;
        } else {  // a = 0 forces b = 0 (psd, det 0), c != 0
            u0 = 0; u1 = 1;
        }
        (void)c;
        // complete (u0,u1) to det 1: find (v0,v1) with u0 v1 - u1 v0 = 1
        long long x, y;  // u0 x + u1 y = 1
        {
            long long r0 = u0, r1 = u1, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (r1 != 0) {
                long long q = r0 / r1;
                std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
                std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
                std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
            }
            if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
            if (r0 != 1) throw std::logic_error("gl2z_reduce_T: vector not primitive");
            x = s0; y = t0;
        }
        Mat2z U{{{u0, -y}, {u1, x}}};  // det = u0 x + u1 y = 1, first column u
        return {TIndex{n, 0, 0}, U};
    }
    qf::BQF f{T.a, T.b, T.c};
    auto [f0, gamma] = qf::reduce(f);
    // gamma^t T gamma = T0 hence T = U T0 U^t with U = gamma^{-t}
    return {TIndex{f0.a, f0.b, f0.c}, inv_transpose_unimodular(gamma)};
}

CoeffVec rho_apply(const WeightData& wt, const qf::Mat2q& g, const CoeffVec& v) {
    int n = wt.n();
    Rat det = g.det();
    Rat detk = rpow(det, wt.k);
    // (X,Y) g = (p X + r Y, q X + s Y)
    const Rat &p = g.m[0][0], &q = g.m[0][1], &r = g.m[1][0], &s = g.m[1][1];
    // powers of the two linear forms: (pX + rY)^i coefficients
    std::vector<std::vector<Rat>> powA(n + 1), powB(n + 1);
    powA[0] = {Rat(1)};
    powB[0] = {Rat(1)};
    for (int i = 1; i <= n; ++i) {
        powA[i].assign(i + 1, Rat(0));
        powB[i].assign(i + 1, Rat(0));
        for (int j = 0; j < i; ++j) {
            powA[i][j] += powA[i - 1][j] * p;
            powA[i][j + 1] += powA[i - 1][j] * r;
            powB[i][j] += powB[i - 1][j] * q;
            powB[i][j + 1] += powB[i - 1][j] * s;
        }
    }
    CoeffVec out(n + 1, Rat(0));
    for (int i = 0; i <= n; ++i) {  // v_i X^{n-i} Y^i -> (pX+rY)^{n-i} (qX+sY)^i
        if (v[i] == 0) continue;
        for (int j = 0; j <= n - i; ++j)
            for (int l = 0; l <= i; ++l)
                out[j + l] += v[i] * powA[n - i][j] * powB[i][l];
    }
    for (auto& x : out) x *= detk;
    return out;
}

CoeffVec rho_apply(const WeightData& wt, const Mat2z& g, const CoeffVec& v) {
    qf::Mat2q gq;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gq.m[i][j] = Rat(g.m[i][j]);
    return rho_apply(wt, gq, v);
}

Expansion::Expansion(WeightData w, int lev, long long B) : wt(w), level(lev), bound(B) {
    sing_bound = B / 2 + 2;
    sing.assign(size_t(sing_bound + 1), Rat(0));
}

const CoeffVec* Expansion::at_reduced(const TIndex& T) const {
    auto it = pd.find(tkey(T));
    return it == pd.end() ? nullptr : &it->second;
}

Rat Expansion::sing_at(long long n) const {
    if (n < 0 || n > sing_bound) throw std::out_of_range("sing_at: beyond stored bound");
    return sing[size_t(n)];
}

bool Expansion::is_cuspidal() const {
    for (const auto& s : sing)
        if (s != 0) return false;
    return true;
}

CoeffVec Expansion::lookup(const TIndex& T) const {
    if (!T.psd()) throw std::domain_error("lookup: T not psd");
    auto [T0, U] = gl2z_reduce_T(T);
    if (T0.det4() == 0) {
        CoeffVec v = zero_vec();
        if (wt.r == 0) {
            v[0] = sing_at(T0.a);
            return v;  // scalar: rho(U) acts by det^k = (+-1)^k; det U may be -1
        }
        // vector-valued forms handled here are cusp forms; singular values vanish
        return v;
    }
    if (T0.det4() > bound) throw std::out_of_range("lookup: beyond stored bound");
    const CoeffVec* v = at_reduced(T0);
    if (!v) throw std::logic_error("lookup: missing reduced class");
    if (U.m[0][0] == 1 && U.m[0][1] == 0 && U.m[1][0] == 0 && U.m[1][1] == 1) return *v;
    return rho_apply(wt, U, *v);
}

void Expansion::set(const TIndex& T, CoeffVec v) {
    pd[tkey(T)] = std::move(v);
}

std::vector<TIndex> Expansion::keys_sorted() const {
    std::vector<TIndex> ks = reduced_classes(bound);
    std::vector<TIndex> out;
    for (const auto& T : ks)
        if (pd.count(tkey(T))) out.push_back(T);
    return out;
}

Expansion& Expansion::operator*=(const Rat& s) {
    for (auto& [k, v] : pd)
        for (auto& x : v) x *= s;
    for (auto& x : sing) x *= s;
    return *this;
}

Expansion& Expansion::add_scaled(const Expansion& o, const Rat& s) {
    if (!(wt == o.wt) || level != o.level)
        throw std::domain_error("add_scaled: weight/level mismatch");
    bound = std::min(bound, o.bound);
    sing_bound = std::min(sing_bound, o.sing_bound);
    sing.resize(size_t(sing_bound + 1));
    for (auto& [k, v] : pd) {
        auto it = o.pd.find(k);
        if (it == o.pd.end()) continue;
        for (size_t i = 0; i < v.size(); ++i) v[i] += s * it->second[i];
    }
    for (long long n = 0; n <= sing_bound; ++n) sing[size_t(n)] += s * o.sing[size_t(n)];
    return *this;
}

std::vector<TIndex> reduced_classes(long long B) {
    std::vector<TIndex> out;
    for (long long a = 1; 3 * a * a <= B; ++a)
        for (long long b = 0; b <= a; ++b)
            for (long long c = a; 4 * a * c - b * b <= B; ++c) {
                if (4 * a * c - b * b <= 0) continue;
                out.push_back({a, b, c});
                if (b != 0 && b != a && a != c) out.push_back({a, -b, c});
            }
    std::sort(out.begin(), out.end(), [](const TIndex& x, const TIndex& y) {
        return std::tuple(x.det4(), x.a, x.b) < std::tuple(y.det4(), y.a, y.b);
    });
    return out;
}

// ---- exact product ----

namespace {

struct ScaledForm {
    // integer-scaled copy: coeff * denom = stored integer
    Int denom;
    std::unordered_map<uint64_t, Int> pd;
    std::vector<Int> sing;
};

ScaledForm scale_form(const Expansion& F) {
    if (F.wt.r != 0) throw std::domain_error("multiply: scalar-valued inputs required");
    ScaledForm S;
    Int den = 1;
    auto lcm_den = [&den](const Rat& q) {
        Int d = denominator(q);
        den = den / boost::multiprecision::gcd(den, d) * d;
    };
    for (const auto& [k, v] : F.pd) lcm_den(v[0]);
    for (const auto& s : F.sing) lcm_den(s);
    S.denom = den;
    for (const auto& [k, v] : F.pd)
        S.pd[k] = numerator(v[0]) * (den / denominator(v[0]));
    S.sing.reserve(F.sing.size());
    for (const auto& s : F.sing) S.sing.push_back(numerator(s) * (den / denominator(s)));
    return S;
}

// integer-scaled coefficient of F at arbitrary psd T (scalar forms)
const Int* scaled_lookup(const ScaledForm& S, const TIndex& T, Int& tmp) {
    auto [T0, U] = gl2z_reduce_T(T);
    (void)U;
    if (T0.det4() == 0) {
        if (T0.a >= (long long)S.sing.size()) return nullptr;
        return &S.sing[size_t(T0.a)];
    }
    auto it = S.pd.find(tkey(T0));
    if (it == S.pd.end()) return nullptr;
    (void)tmp;
    return &it->second;
}

} // namespace

Expansion multiply(const Expansion& F, const Expansion& G, int threads) {
    if (F.level != G.level) throw std::domain_error("multiply: level mismatch");
    long long B = std::min(F.bound, G.bound);
    Expansion R(WeightData{F.wt.k + G.wt.k, 0}, F.level, B);
    ScaledForm SF = scale_form(F), SG = scale_form(G);
    Int den = SF.denom * SG.denom;

    // singular output: 1-dimensional convolution
    for (long long n = 0; n <= R.sing_bound; ++n) {
        Int acc = 0;
        for (long long j = 0; j <= n; ++j) {
            if (j >= (long long)SF.sing.size() || n - j >= (long long)SG.sing.size())
                throw std::out_of_range("multiply: singular bound too small");
            acc += SF.sing[size_t(j)] * SG.sing[size_t(n - j)];
        }
        R.sing[size_t(n)] = Rat(acc, den);
    }

    std::vector<TIndex> keys = reduced_classes(B);
    std::vector<Rat> vals(keys.size());
    auto work = [&](size_t lo, size_t hi) {
        Int tmp, acc, prod;
        for (size_t ki = lo; ki < hi; ++ki) {
            const TIndex& T = keys[ki];
            acc = 0;
            for (long long a1 = 0; a1 <= T.a; ++a1)
                for (long long c1 = 0; c1 <= T.c; ++c1) {
                    // b1 window: T1 psd and T - T1 psd
                    long long lim1 = 2 * isqrtll(a1 * c1);
                    long long lim2 = 2 * isqrtll((T.a - a1) * (T.c - c1));
                    long long lob = std::max(-lim1, T.b - lim2);
                    long long hib = std::min(lim1, T.b + lim2);
                    for (long long b1 = lob; b1 <= hib; ++b1) {
                        TIndex T1{a1, b1, c1}, T2{T.a - a1, T.b - b1, T.c - c1};
                        if (4 * a1 * c1 - b1 * b1 < 0) continue;
                        if (4 * T2.a * T2.c - T2.b * T2.b < 0) continue;
                        const Int* x = scaled_lookup(SF, T1, tmp);
                        if (!x || *x == 0) continue;
                        const Int* y = scaled_lookup(SG, T2, tmp);
                        if (!y || *y == 0) continue;
                        prod = *x;
                        prod *= *y;
                        acc += prod;
                    }
                }
            vals[ki] = Rat(acc, den);
        }
    };
    if (threads <= 1 || keys.size() < 64) {
        work(0, keys.size());
    } else {
        std::vector<std::thread> pool;
        size_t per = (keys.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            size_t lo = t * per, hi = std::min(keys.size(), (t + 1) * per);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    for (size_t ki = 0; ki < keys.size(); ++ki) R.set(keys[ki], {vals[ki]});
    return R;
}

CoeffVec multiply_single_key_bruteforce(const Expansion& F, const Expansion& G, const TIndex& T) {
    // direct convolution over all semi-integral psd summands, no reduction shortcuts
    Rat acc = 0;
    for (long long a1 = 0; a1 <= T.a; ++a1)
        for (long long c1 = 0; c1 <= T.c; ++c1)
            for (long long b1 = -2 * isqrtll(a1 * c1); b1 <= 2 * isqrtll(a1 * c1); ++b1) {
                TIndex T1{a1, b1, c1}, T2{T.a - a1, T.b - b1, T.c - c1};
                if (!T1.psd() || !T2.psd()) continue;
                acc += F.lookup(T1)[0] * G.lookup(T2)[0];
            }
    return {acc};
}

// ---- file format ----
// header: "weight k r level N bound B"
// lines:  "a b c : v_0 ... v_n"

void Expansion::write(std::ostream& os) const {
    os << "weight " << wt.k << " " << wt.r << " level " << level << " bound " << bound << "\n";
    for (long long n = 0; n <= sing_bound; ++n) {
        os << n << " 0 0 :";
        os << " " << sing[size_t(n)];
        for (int i = 1; i < wt.dim(); ++i) os << " 0";
        os << "\n";
    }
    for (const auto& T : keys_sorted()) {
        const CoeffVec& v = *at_reduced(T);
        os << T.a << " " << T.b << " " << T.c << " :";
        for (const auto& x : v) os << " " << x;
        os << "\n";
    }
}

Expansion Expansion::read(std::istream& is) {
    std::string word;
    int k, r, level;
    long long B;
    is >> word >> k >> r;
    if (word != "weight") throw std::runtime_error("expansion file: bad header");
    is >> word >> level;
    if (word != "level") throw std::runtime_error("expansion file: bad header");
    is >> word >> B;
    if (word != "bound") throw std::runtime_error("expansion file: bad header");
    Expansion F(WeightData{k, r}, level, B);
    std::string line;
    std::getline(is, line);
    long long maxsing = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        TIndex T;
        std::string colon;
        ls >> T.a >> T.b >> T.c >> colon;
        CoeffVec v;
        std::string tok;
        while (ls >> tok) v.push_back(Rat(tok));
        if ((int)v.size() != F.wt.dim())
            throw std::runtime_error("expansion file: wrong vector length");
        if (T.det4() == 0 && T.b == 0 && T.c == 0) {
            if (T.a <= F.sing_bound) F.sing[size_t(T.a)] = v[0];
            maxsing = std::max(maxsing, T.a);
        } else {
            F.set(T, std::move(v));
        }
    }
    if (maxsing >= 0 && maxsing < F.sing_bound) F.sing_bound = maxsing;
    return F;
}

} // namespace sbp::siegel
