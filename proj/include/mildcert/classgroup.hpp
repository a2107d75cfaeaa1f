#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mildcert/ideal.hpp"
#include "mildcert/quadfield.hpp"

namespace mildcert {

/// Positive definite binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    Integer a, b, c;

    Integer discriminant() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    std::string str() const;

    bool operator==(const QuadForm&) const = default;
};

QuadForm reduce_form(QuadForm f);
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm principal_form(const QuadField& k);
QuadForm inverse_form(const QuadForm& f);
QuadForm form_pow(const QuadForm& f, u64 e);
u64 form_order(const QuadForm& f);

/// Reduced form of the class of I (its primitive part).
QuadForm ideal_to_form(const IntegralIdeal& ideal);
/// Primitive ideal (a, (-b + sqrt D)/2) attached to f.
IntegralIdeal form_to_ideal(const QuadField& k, const QuadForm& f);

/// Smallest e >= 0 with base^e = target, or nullopt if target is not in <base>.
std::optional<u64> class_dlog(const QuadForm& target, const QuadForm& base);

/// Generator x of the principal ideal I, (x) = I. The canonical associate has
/// a > 0, or a = 0 and b > 0, in the (a + b sqrt d)/den form.
FieldElement principal_generator(const IntegralIdeal& ideal);
/// Generator of the fractional ideal numerator/denominator.
FieldElement principal_generator(const IntegralIdeal& numerator, const Integer& denominator);

FieldElement canonical_associate(const QuadField& k, const FieldElement& x);
std::vector<FieldElement> units(const QuadField& k);

/// Multiplication table of Cl_k over the reduced forms, identity at index 0.
class CayleyTable {
public:
    explicit CayleyTable(std::vector<QuadForm> forms);

    std::size_t size() const noexcept { return forms_.size(); }
    const std::vector<QuadForm>& forms() const noexcept { return forms_; }
    std::size_t mul(std::size_t i, std::size_t j) const { return table_[i * forms_.size() + j]; }
    std::size_t index_of(const QuadForm& f) const;
    std::size_t pow(std::size_t i, u64 e) const;
    u64 order(std::size_t i) const;
    // Dimension over F_p of Cl/Cl^p, read off the p-torsion subgroup.
    unsigned p_rank(u64 p) const;

private:
    std::vector<QuadForm> forms_;
    std::vector<std::size_t> table_;
};

/// The prime a1 whose class spans Cl_k/p, with a1^q1 = (a1_elt).
struct A1Data {
    Place place;
    IntegralIdeal ideal;
    QuadForm form;
    u64 q1 = 0;
    FieldElement generator;
};

struct ClassGroupData {
    QuadField field;
    u64 p = 0;
    std::vector<QuadForm> forms;  // all reduced forms of discriminant D, principal form first
    u64 class_number = 0;
    unsigned p_rank = 0;
    u64 h = 0;             // prime-to-p part of the class number
    u64 p_part_order = 0;  // class_number / h
    std::optional<A1Data> a1;
};

/// All reduced forms with |b| <= a <= c, sorted by (a, b) with the principal form first.
std::vector<QuadForm> reduced_forms(i64 discriminant);

ClassGroupData enumerate_class_group(const QuadField& k, u64 p);

/// Scans odd primes upwards (smaller root first) for a degree-one place whose class
/// spans Cl_k/p, skipping every prime lying under a place of S.
A1Data choose_a1(const QuadField& k, const ClassGroupData& cl, std::span<const Place> S);

/// class_group + choose_a1, requiring p-rank one.
ClassGroupData class_group_with_a1(const QuadField& k, u64 p, std::span<const Place> S);

/// w^h = a1^{l_w1} (varpi_w).
struct PiData {
    Place w;
    u64 l_w1 = 0;
    FieldElement varpi;
};

PiData compute_pi(const Place& w, const ClassGroupData& cl);

}  // namespace mildcert
