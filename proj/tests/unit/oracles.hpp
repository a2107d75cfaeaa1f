#pragma once

// Deliberately naive reference implementations, kept apart from the library.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

inline u64 mod(i64 x, u64 m) {
    i64 r = x % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline int count_sqrt(i64 D, u64 ell) {
    int n = 0;
    for (u64 x = 0; x < ell; ++x)
        if ((x * x) % ell == mod(D, ell)) ++n;
    return n;
}

// repeated multiplication, no squaring
inline u64 naive_pow(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    for (u64 i = 0; i < e; ++i) r = (r * (b % m)) % m;
    return r;
}

inline u64 naive_inverse(u64 a, u64 m) {
    for (u64 x = 1; x < m; ++x)
        if ((a * x) % m == 1) return x;
    return 0;
}

// F_ell[s]/(s^2 - D)
struct Fq2 {
    u64 ell;
    u64 D;
    using E = std::pair<u64, u64>;
    E mul(E x, E y) const {
        u64 c0 = (x.first * y.first + (x.second * y.second) % ell * D) % ell;
        u64 c1 = (x.first * y.second + x.second * y.first) % ell;
        return {c0, c1};
    }
    E naive_pow(E x, u64 e) const {
        E r{1 % ell, 0};
        for (u64 i = 0; i < e; ++i) r = mul(r, x);
        return r;
    }
    // right-to-left binary powering, written independently of the library
    E pow(E x, u64 e) const {
        E r{1 % ell, 0};
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
};

struct Form {
    i64 a, b, c;
    bool operator==(const Form&) const = default;
};

// Reduced forms by triple loop over |b| <= a <= c.
inline std::vector<Form> brute_reduced_forms(i64 D) {
    std::vector<Form> out;
    for (i64 a = 1; 3 * a * a <= -D; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b - D;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    return out;
}

// f(px + qy, rx + sy) for the matrix [[p, q], [r, s]].
inline Form act(const Form& f, i64 p, i64 q, i64 r, i64 s) {
    return {f.a * p * p + f.b * p * r + f.c * r * r, 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
            f.a * q * q + f.b * q * s + f.c * s * s};
}

// Search SL2(Z) matrices with small entries carrying f to g.
inline bool sl2_equivalent(const Form& f, const Form& g, i64 bound = 6) {
    for (i64 p = -bound; p <= bound; ++p)
        for (i64 q = -bound; q <= bound; ++q)
            for (i64 r = -bound; r <= bound; ++r)
                for (i64 s = -bound; s <= bound; ++s)
                    if (p * s - q * r == 1 && act(f, p, q, r, s) == g) return true;
    return false;
}

// Determinant mod p by the Leibniz expansion.
inline u64 leibniz_det(const std::vector<std::vector<u64>>& A, u64 p) {
    const std::size_t n = A.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    u64 total = 0;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        u64 term = 1;
        for (std::size_t i = 0; i < n; ++i) term = term * A[i][perm[i]] % p;
        total = (inversions % 2 ? total + p - term : total + term) % p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace oracle
