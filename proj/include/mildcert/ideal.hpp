#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mildcert/quadfield.hpp"

namespace mildcert {

/// Nonzero integral ideal of O_k.
///
/// Stored as the Hermite normal form of its Z-basis in coordinates over
/// (1, omega): { A, B + C*omega } with A, C > 0, 0 <= B < A and C | A, C | B.
/// The standardized view is m * (norm_a, (b_root + sqrt D)/2) with m = C,
/// norm_a = A/C and b_root^2 = D mod 4*norm_a, 0 <= b_root < 2*norm_a.
class IntegralIdeal {
public:
    using Coords = std::pair<Integer, Integer>;  // x + y*omega

    static IntegralIdeal from_generators(const QuadField& k, const std::vector<Coords>& z_gens);
    static IntegralIdeal principal(const QuadField& k, const FieldElement& x);
    static IntegralIdeal of_place(const QuadField& k, const Place& v);
    static IntegralIdeal unit(const QuadField& k);
    // m * (norm_a, (b_root + sqrt D)/2)
    static IntegralIdeal standardized(const QuadField& k, const Integer& norm_a, const Integer& b_root,
                                      const Integer& m = 1);

    const QuadField& field() const noexcept { return k_; }
    const Integer& hnf_a() const noexcept { return a_; }
    const Integer& hnf_b() const noexcept { return b_; }
    const Integer& hnf_c() const noexcept { return c_; }

    Integer norm() const { return a_ * c_; }
    Integer scalar() const { return c_; }
    Integer norm_a() const { return a_ / c_; }
    Integer b_root() const;
    bool is_primitive() const { return c_ == 1; }

    // Z-basis as elements of k.
    std::pair<FieldElement, FieldElement> basis() const;

    bool contains(const FieldElement& x) const;
    IntegralIdeal conj() const;
    IntegralIdeal operator*(const IntegralIdeal& o) const;
    IntegralIdeal operator*(const Integer& m) const;
    IntegralIdeal pow(u64 e) const;

    bool operator==(const IntegralIdeal& o) const {
        return k_ == o.k_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
    }

    std::string str() const;

private:
    IntegralIdeal(const QuadField& k, Integer a, Integer b, Integer c)
        : k_(k), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

    QuadField k_;
    Integer a_, b_, c_;
};

// Product in omega-coordinates.
IntegralIdeal::Coords omega_mul(const QuadField& k, const IntegralIdeal::Coords& x, const IntegralIdeal::Coords& y);

}  // namespace mildcert
