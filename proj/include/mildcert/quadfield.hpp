#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "mildcert/arith.hpp"

namespace mildcert {

/// Imaginary quadratic field k = Q(sqrt d), d < 0 squarefree.
///
/// The ring of integers is Z[omega] with omega = (1 + sqrt d)/2 when
/// d = 1 mod 4 and omega = sqrt d otherwise, so omega^2 = t*omega - n with
/// t = omega_trace() and n = omega_norm().
class QuadField {
public:
    static QuadField make(i64 d);

    i64 radicand() const noexcept { return d_; }
    i64 discriminant() const noexcept { return disc_; }
    bool omega_is_half() const noexcept { return disc_ == d_; }
    int omega_trace() const noexcept { return omega_is_half() ? 1 : 0; }
    Integer omega_norm() const;

    bool operator==(const QuadField&) const = default;

private:
    QuadField(i64 d, i64 disc) : d_(d), disc_(disc) {}

    i64 d_;
    i64 disc_;
};

QuadField make_field(i64 d);

/// Element (a + b sqrt d)/den of k, kept in lowest terms with den > 0.
class FieldElement {
public:
    FieldElement(i64 d, Integer a, Integer b = 0, Integer den = 1);

    static FieldElement from_omega(const QuadField& k, const Integer& x, const Integer& y);

    i64 radicand() const noexcept { return d_; }
    const Integer& a() const noexcept { return a_; }
    const Integer& b() const noexcept { return b_; }
    const Integer& den() const noexcept { return den_; }

    Rational norm() const;
    Rational trace() const;
    FieldElement conj() const;
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_integral() const;

    // Coordinates (x, y) with self = x + y*omega; requires is_integral().
    std::pair<Integer, Integer> omega_coords() const;

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator*(const Integer& m) const;
    FieldElement operator/(const Integer& m) const;

    bool operator==(const FieldElement& o) const {
        return d_ == o.d_ && a_ == o.a_ && b_ == o.b_ && den_ == o.den_;
    }

    std::string str() const;

private:
    void canonicalize();

    i64 d_;
    Integer a_, b_, den_;
};

FieldElement elem_mul(const FieldElement& x, const FieldElement& y);
Rational elem_norm(const FieldElement& x);
FieldElement elem_conj(const FieldElement& x);

enum class SplitKind { split, inert, ramified };

std::string_view to_string(SplitKind kind);

/// Finite place of k above a rational prime ell.
///
/// For odd ell and degree one, root is the residue of sqrt d at the place,
/// i.e. the place is ell*O_k + (sqrt d - root)*O_k. omega_root is the
/// residue of omega and is what selects the place for ell = 2.
struct Place {
    u64 ell = 0;
    SplitKind kind = SplitKind::inert;
    u64 root = 0;
    u64 omega_root = 0;

    unsigned degree() const noexcept { return kind == SplitKind::inert ? 2 : 1; }
    u64 norm() const noexcept { return kind == SplitKind::inert ? ell * ell : ell; }
    // "ell" for inert places, "ell:root" otherwise.
    std::string label() const;

    bool operator==(const Place&) const = default;
    // Lexicographic on (ell, root): the scan order used by every search.
    std::strong_ordering operator<=>(const Place& o) const {
        if (auto c = ell <=> o.ell; c != 0) return c;
        return root <=> o.root;
    }
};

/// All places above ell, ordered by root.
std::vector<Place> split_prime(const QuadField& k, u64 ell);

/// The degree-one place above ell with sqrt d = root, or the
/// unique place above an inert/ramified ell when root is omitted.
Place make_place(const QuadField& k, u64 ell, std::optional<u64> root = std::nullopt);

/// Element c0 + c1*s of F_ell[s]/(s^2 - D) for inert places, c0 of F_ell otherwise.
struct ResidueElement {
    u64 c0 = 0;
    u64 c1 = 0;

    bool operator==(const ResidueElement&) const = default;
    bool is_one() const noexcept { return c0 == 1 && c1 == 0; }
    bool is_zero() const noexcept { return c0 == 0 && c1 == 0; }
};

/// Residue field O_k/v together with the reduction map from k.
class ResidueField {
public:
    ResidueField(const QuadField& k, const Place& v);

    const Place& place() const noexcept { return place_; }
    u64 characteristic() const noexcept { return place_.ell; }
    unsigned degree() const noexcept { return place_.degree(); }
    u64 order() const noexcept { return place_.norm(); }

    ResidueElement zero() const { return {}; }
    ResidueElement one() const { return {1, 0}; }
    ResidueElement make(u64 c0, u64 c1 = 0) const;

    ResidueElement add(const ResidueElement& x, const ResidueElement& y) const;
    ResidueElement mul(const ResidueElement& x, const ResidueElement& y) const;
    ResidueElement pow(ResidueElement x, u64 e) const;
    ResidueElement pow(const ResidueElement& x, const Integer& e) const;
    ResidueElement frobenius(const ResidueElement& x) const;

    // Throws when ell divides the denominator of x.
    ResidueElement reduce(const FieldElement& x) const;

private:
    Place place_;
    u64 ell_;
    u64 disc_mod_;      // D mod ell, the square of s for inert places
    u64 sqrt_d_image_;  // image of sqrt d: root (degree one) or s-coefficient (inert)
};

ResidueElement reduce_mod_place(const QuadField& k, const FieldElement& x, const Place& v);
ResidueElement residue_pow(const ResidueField& field, const ResidueElement& r, u64 e);

std::string to_string(const ResidueElement& r, const ResidueField& field);

}  // namespace mildcert
