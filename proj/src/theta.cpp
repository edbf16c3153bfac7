#include "sbp/siegel.hpp"

#include <array>

namespace sbp::siegel {

namespace {

// sparse series on the (1/8)-grid: T = [[A/8, B/16],[B/16, C/8]],
// Gaussian-integer coefficients
struct ThetaSeries {
    std::unordered_map<uint64_t, std::pair<Int, Int>> m;
};

uint64_t gkey(long long A, long long B, long long C) {
    return (uint64_t(A) << 40) | (uint64_t(C) << 20) | uint64_t(B + (1 << 19));
}
void gunkey(uint64_t k, long long& A, long long& B, long long& C) {
    A = (long long)(k >> 40);
    C = (long long)((k >> 20) & 0xfffff);
    B = (long long)(k & 0xfffff) - (1 << 19);
}

// theta constant with characteristic (ap, bp), entries in {0, 1/2} encoded as 0/1
// (value = entry / 2); truncated to A + C <= 8 tmax
ThetaSeries theta_constant(std::array<int, 2> ap, std::array<int, 2> bp, long long tmax) {
    ThetaSeries S;
    long long lim = isqrtll(8 * tmax) + 2;
    for (long long x1 = -lim; x1 <= lim; ++x1)
        for (long long x2 = -lim; x2 <= lim; ++x2) {
            long long u1 = 2 * x1 + ap[0], u2 = 2 * x2 + ap[1];
            long long A = u1 * u1, C = u2 * u2, B = 2 * u1 * u2;
            if (A + C > 8 * tmax) continue;
            // phase i^{2 u.b'} with 2 u.b' = u1 bp0 + u2 bp1
            long long e = ((u1 * bp[0] + u2 * bp[1]) % 4 + 4) % 4;
            auto& acc = S.m[gkey(A, B, C)];
            switch (e) {
                case 0: acc.first += 1; break;
                case 1: acc.second += 1; break;
                case 2: acc.first -= 1; break;
                case 3: acc.second -= 1; break;
            }
        }
    return S;
}

ThetaSeries mul(const ThetaSeries& X, const ThetaSeries& Y, long long tmax) {
    ThetaSeries R;
    for (const auto& [k1, v1] : X.m) {
        long long A1, B1, C1;
        gunkey(k1, A1, B1, C1);
        for (const auto& [k2, v2] : Y.m) {
            long long A2, B2, C2;
            gunkey(k2, A2, B2, C2);
            if (A1 + A2 + C1 + C2 > 8 * tmax) continue;
            auto& acc = R.m[gkey(A1 + A2, B1 + B2, C1 + C2)];
            acc.first += v1.first * v2.first - v1.second * v2.second;
            acc.second += v1.first * v2.second + v1.second * v2.first;
        }
    }
    return R;
}

} // namespace

Expansion chi10_theta_product(long long B) {
    long long tmax = (B + 1) / 4 + 2;
    // the ten even characteristics (a', b'), 4 a'.b' even
    std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> even;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int b1 = 0; b1 < 2; ++b1)
                for (int b2 = 0; b2 < 2; ++b2)
                    if ((a1 * b1 + a2 * b2) % 2 == 0)
                        even.push_back({{a1, a2}, {b1, b2}});
    if (even.size() != 10) throw std::logic_error("chi10_theta_product: characteristic count");
    ThetaSeries acc;
    acc.m[gkey(0, 0, 0)] = {Int(1), Int(0)};
    for (const auto& [ap, bp] : even) {
        ThetaSeries t = theta_constant(ap, bp, tmax);
        ThetaSeries t2 = mul(t, t, tmax);
        acc = mul(acc, t2, tmax);
    }
    Expansion F(WeightData{10, 0}, 1, B);
    for (auto& s : F.sing) s = 0;
    // reduced representatives minimize the trace in their class, so the exact
    // truncated support contains them; read coefficients off reduced keys only
    for (const auto& [k, v] : acc.m) {
        long long A, Bq, C;
        gunkey(k, A, Bq, C);
        if (v.second != 0) throw std::logic_error("chi10_theta_product: non-real coefficient");
        if (v.first == 0) continue;
        if (A % 8 || C % 8 || Bq % 8)
            throw std::logic_error("chi10_theta_product: non semi-integral support");
        TIndex T{A / 8, Bq / 8, C / 8};
        if (T.det4() == 0) {
            if (T.b == 0 && T.c == 0 && T.a <= F.sing_bound) F.sing[size_t(T.a)] = Rat(v.first) / 4096;
            continue;
        }
        if (T.det4() > B) continue;
        auto [T0, U] = gl2z_reduce_T(T);
        (void)U;
        if (T0 == T) F.set(T, {Rat(v.first) / 4096});
    }
    return F;
}

namespace {

// vectors of the E8 lattice of given even norm
const std::vector<std::array<int, 8>>& e8_shell(int norm2) {
    static std::map<int, std::vector<std::array<int, 8>>> cache;
    auto it = cache.find(norm2);
    if (it != cache.end()) return it->second;
    std::vector<std::array<int, 8>> out;
    // integer part: x in Z^8, sum even, |x|^2 = norm2
    // half-integer part: x in (Z+1/2)^8, sum even; store 2x to stay integral
    // enumerate 2x = y in Z^8 with all y_i = parity p (p = 0 or 1), |y|^2 = 4 norm2,
    // sum y_i = 0 mod 4 (sum x in 2Z)
    int target = 4 * norm2;
    std::array<int, 8> y{};
    // store 2x; coordinates share a parity p, sum = 0 mod 4
    for (int p = 0; p < 2; ++p) {
        std::function<void(int, int, int)> rec = [&](int idx, int rem, int sum) {
            if (idx == 8) {
                if (rem == 0 && ((sum % 4) + 4) % 4 == 0) out.push_back(y);
                return;
            }
            int lim = int(isqrtll(rem));
            for (int t = -lim; t <= lim; ++t) {
                if (((t % 2) + 2) % 2 != p) continue;
                y[idx] = t;
                rec(idx + 1, rem - t * t, sum + t);
            }
        };
        rec(0, target, 0);
    }
    auto [pos, ok] = cache.emplace(norm2, std::move(out));
    (void)ok;
    return pos->second;
}

} // namespace

CoeffVec e8_theta_coefficient(const TIndex& T) {
    // number of pairs (v, w) in E8^2 with Gram = 2T; stored y = 2v, so
    // y.y = 8a, z.z = 8c, y.z = 4b
    const auto& sv = e8_shell(int(T.a));
    const auto& sw = e8_shell(int(T.c));
    long long count = 0;
    for (const auto& y : sv)
        for (const auto& z : sw) {
            int dot = 0;
            for (int i = 0; i < 8; ++i) dot += y[i] * z[i];
            if (dot == 4 * T.b) ++count;
        }
    return {Rat(count)};
}

} // namespace sbp::siegel
