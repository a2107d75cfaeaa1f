#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace mildcert {

using Integer = mpz_class;
using Rational = mpq_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Residue fields and mu_p live in machine words; characteristics are capped so
// that q = ell^2 and every product of two reduced residues fit in 64 bits.
inline constexpr u64 kMaxResidueChar = (u64{1} << 31);

u64 mul_mod(u64 a, u64 b, u64 m);
u64 add_mod(u64 a, u64 b, u64 m);
u64 sub_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
// Inverse of a modulo m; a must be a unit.
u64 inv_mod(u64 a, u64 m);

// x mod m in [0, m), for any sign of x.
u64 mod_u64(const Integer& x, u64 m);
u64 mod_u64(i64 x, u64 m);

bool is_prime(u64 n);
bool is_prime(const Integer& n);
bool is_squarefree(i64 n);

// Kronecker symbol (a / n).
int kronecker(const Integer& a, u64 n);

// Square root of a modulo an odd prime ell by Tonelli-Shanks. The auxiliary
// nonresidue is the smallest one, so the returned root is reproducible.
// Returns nullopt when a is a nonresidue.
std::optional<u64> sqrt_mod(u64 a, u64 ell);

// Exact p-adic valuation of n > 0.
unsigned valuation(u64 n, u64 p);

// Round-to-nearest of num/den (den > 0), ties toward +infinity.
Integer round_div(const Integer& num, const Integer& den);

std::string to_string(const Integer& x);

}  // namespace mildcert
