#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mildcert/classgroup.hpp"
#include "mildcert/quadfield.hpp"

namespace mildcert {

/// A fixed primitive p-th root of unity in the residue field of v.
struct MuP {
    Place v;
    u64 p = 0;
    ResidueElement zeta;
    std::vector<ResidueElement> powers;  // zeta^0 .. zeta^{p-1}
};

/// zeta = g^{(q-1)/p} for the first g (c1 = 0 with c0 = 2, 3, ..., then c1 = 1, 2, ...)
/// whose image is not 1, raised to zeta_power when given.
MuP make_mu_p(const QuadField& k, const Place& v, u64 p, u64 zeta_power = 1);

/// x^{(N(v)-1)/p} mod v; throws when x = 0 mod v.
ResidueElement power_residue(const QuadField& k, const FieldElement& x, const Place& v, u64 p);
u64 mu_dlog(const ResidueElement& y, const MuP& mu);

u64 z_linking(const QuadField& k, const FieldElement& a1, const MuP& mu);
/// -dlog of varpi_w at v; 0 when v = w.
u64 l_linking(const QuadField& k, const Place& v, const PiData& pi_w, const MuP& mu);

/// Mod-p linking numbers of S, with S[0] = v0 singular.
///
/// Generator labels are indices 0..d-1: label 0 is the class generator "1",
/// label i >= 1 is the place S[i]. Relations are indexed by S, so relation 0
/// is rho_{v0}.
struct LinkingData {
    u64 p = 0;
    std::vector<Place> S;
    std::vector<u64> z1;                 // z_{1,v}
    std::vector<u64> lw1;                // l_{w,1} mod p
    std::vector<std::vector<u64>> lwv;   // l_{w,v}, zero diagonal
    u64 h_inv = 1;
    u64 q1_mod = 0;                      // z_{1,1}
    std::vector<std::vector<u64>> tilde; // tilde[w][label]

    // provenance, empty for synthetic data
    std::vector<ResidueElement> zeta;
    std::vector<ResidueElement> a1_residue;
    std::vector<std::vector<ResidueElement>> varpi_residue;  // [w][v]
    std::vector<PiData> pi;

    std::size_t d() const noexcept { return S.size(); }
    // z_{1,label}: q1 for label 0.
    u64 z_label(std::size_t g) const { return g == 0 ? q1_mod : z1[g]; }
    // l_{w,label}: l_{w,1} for label 0.
    u64 l_label(std::size_t w, std::size_t g) const { return g == 0 ? lw1[w] : lwv[w][g]; }
    std::string label(std::size_t g) const { return g == 0 ? "1" : S[g].label(); }

    void compute_tilde();

    // Linear-algebra inputs only; S gets placeholder places.
    static LinkingData synthetic(u64 p, std::vector<u64> z1, std::vector<u64> lw1,
                                 std::vector<std::vector<u64>> lwv, u64 h_inv, u64 q1_mod);
};

/// Replacement choices used by the invariance tests.
struct LinkingOverrides {
    std::vector<u64> zeta_power;                       // per S index, 1..p-1
    std::optional<FieldElement> a1;                    // an associate of a1
    std::vector<std::optional<FieldElement>> varpi;    // per S index
};

/// Per-place arithmetic reused across sets: mu_p, varpi, residue and class linking.
struct PlaceArith {
    Place v;
    MuP mu;
    PiData pi;
    ResidueElement a1_residue;
    u64 z1 = 0;
    u64 lw1 = 0;
};

PlaceArith place_arith(const ClassGroupData& cl, const Place& v, u64 zeta_power = 1);

/// Checks that S is usable: odd ell != p, unramified, N(v) = 1 mod p, distinct, away from a1.
void validate_places(const ClassGroupData& cl, std::span<const Place> S);

/// First index of S (input order) where a1 is not a p-th power residue.
std::optional<std::size_t> find_singular(const QuadField& k, std::span<const Place> S, const FieldElement& a1,
                                         u64 p);

/// S is reordered to put v0 first (v0_index, or the first singular place); the
/// other places keep their relative order.
LinkingData build_linking_data(const ClassGroupData& cl, std::span<const Place> S,
                               std::optional<std::size_t> v0_index = std::nullopt,
                               const LinkingOverrides& overrides = {});

/// Same from cached place data; cache[0] must be v0.
LinkingData build_linking_data(const ClassGroupData& cl, std::span<const PlaceArith* const> cache);

}  // namespace mildcert
