#include "mildcert/arith.hpp"

#include "mildcert/error.hpp"

namespace mildcert {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::p_rank: return "p_rank";
    case ErrorKind::no_singular_place: return "no_singular_place";
    case ErrorKind::cardinality: return "cardinality";
    case ErrorKind::invalid_place_set: return "invalid_place_set";
    case ErrorKind::not_principal: return "not_principal";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}

u64 sub_mod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 m) {
    // extended Euclid on signed 128-bit to avoid overflow
    __int128 old_r = static_cast<__int128>(a % m), r = m;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw Error(ErrorKind::internal, "inv_mod: argument is not a unit");
    __int128 x = old_s % static_cast<__int128>(m);
    if (x < 0) x += m;
    return static_cast<u64>(x);
}

u64 mod_u64(const Integer& x, u64 m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), Integer(static_cast<unsigned long>(m)).get_mpz_t());
    return r.get_ui();
}

u64 mod_u64(i64 x, u64 m) {
    __int128 r = static_cast<__int128>(x) % static_cast<__int128>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

bool is_prime(u64 n) {
    return is_prime(Integer(static_cast<unsigned long>(n)));
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    // BPSW inside GMP is deterministic below 2^64, which covers every use here.
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_squarefree(i64 n) {
    u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    if (m == 0) return false;
    for (u64 q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            m /= q;
            if (m % q == 0) return false;
        }
    }
    return true;
}

int kronecker(const Integer& a, u64 n) {
    return mpz_kronecker(a.get_mpz_t(), Integer(static_cast<unsigned long>(n)).get_mpz_t());
}

std::optional<u64> sqrt_mod(u64 a, u64 ell) {
    a %= ell;
    if (a == 0) return 0;
    if (ell == 2) return a;
    if (pow_mod(a, (ell - 1) / 2, ell) != 1) return std::nullopt;
    if (ell % 4 == 3) return pow_mod(a, (ell + 1) / 4, ell);

    u64 q = ell - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (pow_mod(z, (ell - 1) / 2, ell) != ell - 1) ++z;

    u64 m = s;
    u64 c = pow_mod(z, q, ell);
    u64 t = pow_mod(a, q, ell);
    u64 r = pow_mod(a, (q + 1) / 2, ell);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, ell);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, ell);
        m = i;
        c = mul_mod(b, b, ell);
        t = mul_mod(t, c, ell);
        r = mul_mod(r, b, ell);
    }
    return r;
}

unsigned valuation(u64 n, u64 p) {
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

Integer round_div(const Integer& num, const Integer& den) {
    // floor((2*num + den) / (2*den))
    Integer twice = 2 * num + den;
    Integer q;
    Integer d2 = 2 * den;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), d2.get_mpz_t());
    return q;
}

std::string to_string(const Integer& x) {
    return x.get_str();
}

}  // namespace mildcert
