#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mildcert/classgroup.hpp"
#include "mildcert/linking.hpp"

namespace mildcert {

/// Bijection Z/d -> generator labels, ordering[0] = 0 (the label "1").
using Ordering = std::vector<std::size_t>;
using Matrix = std::vector<std::vector<u64>>;

struct Presentation {
    struct Relation {
        std::string place;
        Integer exponent;     // N(v) - 1
        std::vector<u64> y;   // y_v = prod x_g^{y[g]}
    };
    std::vector<std::string> generators;  // x_1, x_{v1}, ...
    std::vector<Relation> relations;
    std::size_t d = 0;
    std::size_t r = 0;
};

Presentation export_presentation(const LinkingData& L);

/// tr_{rho_v}(chi_g1 cup chi_g2); v indexes S (0 is v0), g1 != g2 are labels.
u64 cup_trace(std::size_t v, std::size_t g1, std::size_t g2, const LinkingData& L);

struct Theorem32Conditions {
    bool c1 = false;
    bool c2 = false;
    bool c3 = false;
    bool all() const noexcept { return c1 && c2 && c3; }
};

Theorem32Conditions check_theorem32_conditions(const Ordering& o, const LinkingData& L);

/// a_{i,j} = tr_{rho}(chi_{o(j)} cup chi_{o(j+1)}), rho = rho_{v0} for i = 0 and rho_{o(i)} otherwise.
Matrix matrix_A(const Ordering& o, const LinkingData& L);
u64 det_mod_p(Matrix A, u64 p);
/// z0^{-1} h^{-d} (z_{o(1)} l_{v0,1} prod l_{o(i),o(i+1)} - z_{o(d-1)} l_{v0,1} prod l_{o(i),o(i-1)}).
u64 closed_form_det(const Ordering& o, const LinkingData& L);
/// Every relation's trace vanishes on all pairs of even positions.
bool vv_vanishes(const Ordering& o, const LinkingData& L);

void validate_ordering(const Ordering& o, std::size_t d);

enum class Verdict { mild_certified, not_certified };
std::string_view to_string(Verdict v);

struct DirectChecks {
    bool vv_vanishing = false;
    bool det_nonzero = false;
};

struct MildnessCertificate {
    Verdict verdict = Verdict::not_certified;
    std::string stage;                  // "certified" or the failing stage
    std::optional<Ordering> witness;
    Ordering reported_ordering;         // the ordering A, det and the checks below refer to
    Matrix A;
    u64 det = 0;
    Theorem32Conditions conditions;
    DirectChecks direct;
    std::vector<std::string> flags;
    std::vector<std::string> warnings;
    std::size_t orderings_examined = 0;
    LinkingData linking;
    std::optional<ClassGroupData> classgroup;
    Presentation presentation;
};

/// Linear-algebra layer only. Searches the (d-1)! orderings in lexicographic
/// order unless one is supplied.
MildnessCertificate certify_linking(const LinkingData& L, const std::optional<Ordering>& supplied = std::nullopt);

/// Full pipeline from the field and S.
/// A supplied ordering is given by labels, see parse_ordering.
MildnessCertificate certify_mild(const QuadField& k, u64 p, std::span<const Place> S,
                                 const std::optional<std::vector<std::string>>& supplied = std::nullopt,
                                 const LinkingOverrides& overrides = {});

/// Labels such as "1", "211:71", "67" resolved against L.S; label 0 must come first.
Ordering parse_ordering(std::span<const std::string> labels, const LinkingData& L);
std::vector<std::string> ordering_labels(const Ordering& o, const LinkingData& L);

struct Prop34Report {
    bool cond1 = false, cond2 = false, cond3 = false, cond4 = false, cond5 = false;
    bool verdict() const noexcept { return cond1 && cond2 && cond3 && cond4 && cond5; }
    // residues behind conditions (2)-(4); unset when a condition could not be evaluated
    std::optional<ResidueElement> a1_v0, a1_v1, a1_v2, varpi_v0_v2, varpi_v1_v2, varpi_v2_v3;
    u64 l_v0_1 = 0, l_v1_1 = 0, l_v3_1 = 0;  // mod p
    std::vector<std::string> warnings;
};

/// S = (v0, v1, v2, v3) in role order.
Prop34Report check_prop34(const QuadField& k, u64 p, std::span<const Place> S);
Prop34Report check_prop34(const ClassGroupData& cl, std::span<const PlaceArith* const> roles);

}  // namespace mildcert
