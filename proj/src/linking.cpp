#include "mildcert/linking.hpp"

#include <algorithm>
#include <set>

#include "mildcert/error.hpp"

namespace mildcert {

namespace {

bool is_associate(const FieldElement& x, const FieldElement& y) {
    if (x.radicand() != y.radicand() || y.is_zero() || x.is_zero()) return false;
    FieldElement u = x / y;
    return u.is_integral() && u.norm() == 1;
}

u64 exponent_of(const Place& v, u64 p) { return (v.norm() - 1) / p; }

void require_mu_p(const Place& v, u64 p) {
    if (v.ell == 2) throw Error(ErrorKind::invalid_place_set, "places above 2 are not supported in S");
    if ((v.norm() - 1) % p != 0)
        throw Error(ErrorKind::invalid_place_set,
                    "N(" + v.label() + ") = " + std::to_string(v.norm()) + " is not 1 mod " + std::to_string(p));
}

PlaceArith make_place_arith(const ClassGroupData& cl, const Place& v, u64 zeta_power,
                            const FieldElement& a1, const std::optional<FieldElement>& varpi) {
    const QuadField& k = cl.field;
    PlaceArith pa{v, make_mu_p(k, v, cl.p, zeta_power), compute_pi(v, cl), {}, 0, 0};
    if (varpi) {
        if (!is_associate(*varpi, pa.pi.varpi))
            throw Error(ErrorKind::invalid_input, varpi->str() + " is not an associate of varpi_" + v.label());
        pa.pi.varpi = *varpi;
    }
    pa.a1_residue = power_residue(k, a1, v, cl.p);
    pa.z1 = mu_dlog(pa.a1_residue, pa.mu);
    pa.lw1 = pa.pi.l_w1 % cl.p;
    return pa;
}

}  // namespace

MuP make_mu_p(const QuadField& k, const Place& v, u64 p, u64 zeta_power) {
    require_mu_p(v, p);
    if (zeta_power % p == 0) throw Error(ErrorKind::invalid_input, "zeta power must be prime to p");
    ResidueField F(k, v);
    const u64 e = exponent_of(v, p);
    const u64 ell = v.ell;
    std::optional<ResidueElement> zeta;
    for (u64 c1 = 0; c1 < (v.degree() == 2 ? ell : 1) && !zeta; ++c1) {
        for (u64 c0 = (c1 == 0 ? 2 : 0); c0 < ell; ++c0) {
            ResidueElement z = F.pow(F.make(c0, c1), e);
            if (!z.is_one()) {
                zeta = z;
                break;
            }
        }
    }
    if (!zeta) throw Error(ErrorKind::internal, "no primitive p-th root of unity at " + v.label());
    MuP mu{v, p, F.pow(*zeta, zeta_power % p), {}};
    mu.powers.reserve(p);
    ResidueElement cur = F.one();
    for (u64 i = 0; i < p; ++i) {
        mu.powers.push_back(cur);
        cur = F.mul(cur, mu.zeta);
    }
    return mu;
}

ResidueElement power_residue(const QuadField& k, const FieldElement& x, const Place& v, u64 p) {
    require_mu_p(v, p);
    ResidueField F(k, v);
    ResidueElement r = F.reduce(x);
    if (r.is_zero())
        throw Error(ErrorKind::invalid_place_set, x.str() + " vanishes at " + v.label());
    return F.pow(r, exponent_of(v, p));
}

u64 mu_dlog(const ResidueElement& y, const MuP& mu) {
    for (u64 e = 0; e < mu.p; ++e)
        if (mu.powers[e] == y) return e;
    throw Error(ErrorKind::internal, "residue is not a p-th root of unity at " + mu.v.label());
}

u64 z_linking(const QuadField& k, const FieldElement& a1, const MuP& mu) {
    return mu_dlog(power_residue(k, a1, mu.v, mu.p), mu);
}

u64 l_linking(const QuadField& k, const Place& v, const PiData& pi_w, const MuP& mu) {
    if (v == pi_w.w) return 0;
    u64 e = mu_dlog(power_residue(k, pi_w.varpi, v, mu.p), mu);
    return (mu.p - e) % mu.p;
}

// ---------------------------------------------------------------------------

void LinkingData::compute_tilde() {
    const std::size_t n = d();
    if (z1.empty() || z1[0] % p == 0) throw Error(ErrorKind::no_singular_place, "z_{1,v0} vanishes");
    const u64 z0_inv = inv_mod(z1[0], p);
    tilde.assign(n, std::vector<u64>(n, 0));
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t g = 0; g < n; ++g) {
            u64 corr = mul_mod(mul_mod(z_label(g), z0_inv, p), lwv[w][0], p);
            tilde[w][g] = mul_mod(sub_mod(l_label(w, g), corr, p), h_inv, p);
        }
}

LinkingData LinkingData::synthetic(u64 p, std::vector<u64> z1, std::vector<u64> lw1,
                                   std::vector<std::vector<u64>> lwv, u64 h_inv, u64 q1_mod) {
    const std::size_t n = z1.size();
    if (lw1.size() != n || lwv.size() != n)
        throw Error(ErrorKind::invalid_input, "synthetic linking data: inconsistent sizes");
    LinkingData L;
    L.p = p;
    for (std::size_t i = 0; i < n; ++i) {
        if (lwv[i].size() != n) throw Error(ErrorKind::invalid_input, "synthetic linking data: ragged l table");
        lwv[i][i] = 0;
        L.S.push_back(Place{0, SplitKind::split, i, i});
    }
    L.z1 = std::move(z1);
    L.lw1 = std::move(lw1);
    L.lwv = std::move(lwv);
    L.h_inv = h_inv % p;
    L.q1_mod = q1_mod % p;
    L.compute_tilde();
    return L;
}

PlaceArith place_arith(const ClassGroupData& cl, const Place& v, u64 zeta_power) {
    if (!cl.a1) throw Error(ErrorKind::internal, "place_arith needs a1");
    return make_place_arith(cl, v, zeta_power, cl.a1->generator, std::nullopt);
}

void validate_places(const ClassGroupData& cl, std::span<const Place> S) {
    std::set<Place> seen;
    for (const auto& v : S) {
        const std::string lab = v.label();
        if (v.ell == 2) throw Error(ErrorKind::invalid_place_set, lab + ": places above 2 are not supported in S");
        if (v.ell == cl.p) throw Error(ErrorKind::invalid_place_set, lab + " lies above p");
        if (v.kind == SplitKind::ramified) throw Error(ErrorKind::invalid_place_set, lab + " is ramified");
        if ((v.norm() - 1) % cl.p != 0)
            throw Error(ErrorKind::invalid_place_set,
                        "N(" + lab + ") = " + std::to_string(v.norm()) + " is not 1 mod " + std::to_string(cl.p));
        if (!seen.insert(v).second) throw Error(ErrorKind::invalid_place_set, lab + " appears twice");
        if (cl.a1 && v.ell == cl.a1->place.ell)
            throw Error(ErrorKind::invalid_place_set, lab + " lies under the same prime as a1");
    }
}

std::optional<std::size_t> find_singular(const QuadField& k, std::span<const Place> S, const FieldElement& a1,
                                         u64 p) {
    for (std::size_t i = 0; i < S.size(); ++i)
        if (!power_residue(k, a1, S[i], p).is_one()) return i;
    return std::nullopt;
}

LinkingData build_linking_data(const ClassGroupData& cl, std::span<const Place> S,
                               std::optional<std::size_t> v0_index, const LinkingOverrides& overrides) {
    if (cl.p_rank != 1)
        throw Error(ErrorKind::p_rank, "the " + std::to_string(cl.p) + "-rank of the class group is " +
                                           std::to_string(cl.p_rank) + ", not 1");
    if (!cl.a1) throw Error(ErrorKind::internal, "build_linking_data needs a1");
    if (S.empty()) throw Error(ErrorKind::cardinality, "S is empty");
    validate_places(cl, S);

    FieldElement a1 = cl.a1->generator;
    if (overrides.a1) {
        if (!is_associate(*overrides.a1, a1))
            throw Error(ErrorKind::invalid_input, overrides.a1->str() + " is not an associate of a1");
        a1 = *overrides.a1;
    }
    if (!v0_index) v0_index = find_singular(cl.field, S, a1, cl.p);
    if (!v0_index)
        throw Error(ErrorKind::no_singular_place,
                    "a1 is a p-th power residue at every place of S; B_S may be nontrivial");
    if (*v0_index >= S.size()) throw Error(ErrorKind::invalid_input, "v0 index out of range");

    std::vector<std::size_t> order{*v0_index};
    for (std::size_t i = 0; i < S.size(); ++i)
        if (i != *v0_index) order.push_back(i);

    std::vector<PlaceArith> arith;
    arith.reserve(S.size());
    for (std::size_t i : order) {
        u64 zp = i < overrides.zeta_power.size() ? overrides.zeta_power[i] : 1;
        std::optional<FieldElement> varpi = i < overrides.varpi.size() ? overrides.varpi[i] : std::nullopt;
        arith.push_back(make_place_arith(cl, S[i], zp, a1, varpi));
    }
    std::vector<const PlaceArith*> ptrs;
    for (const auto& a : arith) ptrs.push_back(&a);
    return build_linking_data(cl, ptrs);
}

LinkingData build_linking_data(const ClassGroupData& cl, std::span<const PlaceArith* const> cache) {
    const QuadField& k = cl.field;
    const u64 p = cl.p;
    const std::size_t n = cache.size();
    LinkingData L;
    L.p = p;
    L.h_inv = inv_mod(cl.h % p, p);
    L.q1_mod = cl.a1->q1 % p;
    L.lwv.assign(n, std::vector<u64>(n, 0));
    L.varpi_residue.assign(n, std::vector<ResidueElement>(n, ResidueElement{1, 0}));
    for (const PlaceArith* pa : cache) {
        L.S.push_back(pa->v);
        L.z1.push_back(pa->z1);
        L.lw1.push_back(pa->lw1);
        L.zeta.push_back(pa->mu.zeta);
        L.a1_residue.push_back(pa->a1_residue);
        L.pi.push_back(pa->pi);
    }
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t v = 0; v < n; ++v) {
            if (v == w) continue;
            ResidueElement r = power_residue(k, cache[w]->pi.varpi, cache[v]->v, p);
            L.varpi_residue[w][v] = r;
            L.lwv[w][v] = (p - mu_dlog(r, cache[v]->mu)) % p;
        }
    if (L.z1[0] == 0)
        throw Error(ErrorKind::no_singular_place, "a1 is a p-th power residue at " + L.S[0].label());
    L.compute_tilde();
    return L;
}

}  // namespace mildcert
