#include "mildcert/mildness.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mildcert/error.hpp"

namespace mildcert {

Presentation export_presentation(const LinkingData& L) {
    Presentation pres;
    pres.d = L.d();
    for (std::size_t g = 0; g < L.d(); ++g) pres.generators.push_back("x_" + L.label(g));
    for (std::size_t v = 0; v < L.d(); ++v) {
        Integer exponent(static_cast<unsigned long>(L.S[v].norm()));
        exponent -= 1;
        pres.relations.push_back({L.S[v].label(), exponent, L.tilde.empty() ? std::vector<u64>{} : L.tilde[v]});
    }
    pres.r = pres.relations.size();
    return pres;
}

u64 cup_trace(std::size_t v, std::size_t g1, std::size_t g2, const LinkingData& L) {
    const std::size_t d = L.d();
    if (v >= d || g1 >= d || g2 >= d) throw Error(ErrorKind::invalid_input, "cup_trace: index out of range");
    if (g1 == g2) throw Error(ErrorKind::invalid_input, "cup_trace needs two distinct generators");
    const u64 p = L.p;
    u64 t = 0;
    // label 0 is the class generator and never equals a place
    if (g1 != 0 && v == g1) t = sub_mod(t, L.tilde[g1][g2], p);
    if (g2 != 0 && v == g2) t = add_mod(t, L.tilde[g2][g1], p);
    if (v == 0) {
        u64 inner = sub_mod(mul_mod(L.z_label(g1), L.tilde[0][g2], p), mul_mod(L.z_label(g2), L.tilde[0][g1], p), p);
        t = add_mod(t, mul_mod(inner, inv_mod(L.z1[0], p), p), p);
    }
    return t;
}

void validate_ordering(const Ordering& o, std::size_t d) {
    if (o.size() != d) throw Error(ErrorKind::invalid_input, "ordering must list all " + std::to_string(d) + " labels");
    if (o.empty() || o[0] != 0) throw Error(ErrorKind::invalid_input, "ordering must start with the label 1");
    std::vector<bool> seen(d, false);
    for (auto g : o) {
        if (g >= d || seen[g]) throw Error(ErrorKind::invalid_input, "ordering is not a bijection");
        seen[g] = true;
    }
}

Theorem32Conditions check_theorem32_conditions(const Ordering& o, const LinkingData& L) {
    const std::size_t d = L.d();
    if (d < 4 || d % 2 != 0)
        throw Error(ErrorKind::cardinality, "|S| must be even and at least 4, got " + std::to_string(d));
    validate_ordering(o, d);
    const u64 p = L.p;
    Theorem32Conditions c;

    c.c1 = L.lwv[0][o[d - 2]] == 0 && L.lwv[0][o[2]] == 0;
    for (std::size_t j = 2; j <= d - 2; ++j) c.c1 = c.c1 && L.z1[o[j]] == 0;

    // l_{1,.} is undefined; only rows indexed by places are checked
    c.c2 = true;
    for (std::size_t a = 0; a < d; a += 2)
        for (std::size_t b = 0; b < d; b += 2) {
            if (a == b || o[a] == 0) continue;
            c.c2 = c.c2 && L.l_label(o[a], o[b]) == 0;
        }

    u64 fwd = mul_mod(L.z_label(o[1]), L.lw1[0], p);
    u64 bwd = mul_mod(L.z_label(o[d - 1]), L.lw1[0], p);
    for (std::size_t i = 1; i < d; ++i) {
        fwd = mul_mod(fwd, L.l_label(o[i], o[(i + 1) % d]), p);
        bwd = mul_mod(bwd, L.l_label(o[i], o[i - 1]), p);
    }
    c.c3 = fwd != bwd;
    return c;
}

Matrix matrix_A(const Ordering& o, const LinkingData& L) {
    const std::size_t d = L.d();
    validate_ordering(o, d);
    Matrix A(d, std::vector<u64>(d, 0));
    // o[i] doubles as the relation index: o[0] = 0 is v0's relation
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) A[i][j] = cup_trace(o[i], o[j], o[(j + 1) % d], L);
    return A;
}

u64 det_mod_p(Matrix A, u64 p) {
    const std::size_t n = A.size();
    u64 det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] % p == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(A[piv], A[col]);
            det = (p - det) % p;
        }
        det = mul_mod(det, A[col][col], p);
        u64 inv = inv_mod(A[col][col], p);
        for (std::size_t r = col + 1; r < n; ++r) {
            u64 f = mul_mod(A[r][col], inv, p);
            if (f == 0) continue;
            for (std::size_t c = col; c < n; ++c) A[r][c] = sub_mod(A[r][c], mul_mod(f, A[col][c], p), p);
        }
    }
    return det;
}

u64 closed_form_det(const Ordering& o, const LinkingData& L) {
    const std::size_t d = L.d();
    validate_ordering(o, d);
    const u64 p = L.p;
    u64 fwd = mul_mod(L.z_label(o[1]), L.lw1[0], p);
    u64 bwd = mul_mod(L.z_label(o[d - 1]), L.lw1[0], p);
    for (std::size_t i = 1; i < d; ++i) {
        fwd = mul_mod(fwd, L.l_label(o[i], o[(i + 1) % d]), p);
        bwd = mul_mod(bwd, L.l_label(o[i], o[i - 1]), p);
    }
    u64 scale = mul_mod(inv_mod(L.z1[0], p), pow_mod(L.h_inv, d, p), p);
    return mul_mod(scale, sub_mod(fwd, bwd, p), p);
}

bool vv_vanishes(const Ordering& o, const LinkingData& L) {
    const std::size_t d = L.d();
    for (std::size_t v = 0; v < d; ++v)
        for (std::size_t a = 0; a < d; a += 2)
            for (std::size_t b = a + 2; b < d; b += 2)
                if (cup_trace(v, o[a], o[b], L) != 0) return false;
    return true;
}

std::string_view to_string(Verdict v) {
    return v == Verdict::mild_certified ? "mild_certified" : "not_certified";
}

namespace {

void require_cardinality(std::size_t d) {
    if (d < 4 || d % 2 != 0)
        throw Error(ErrorKind::cardinality, "|S| must be even and at least 4, got " + std::to_string(d));
    if (d > 10) throw Error(ErrorKind::unsupported, "ordering search is capped at |S| = 10");
}

std::string join_labels(const Ordering& o, const LinkingData& L) {
    std::string s = "(";
    for (std::size_t i = 0; i < o.size(); ++i) s += (i ? ", " : "") + L.label(o[i]);
    return s + ")";
}

}  // namespace

MildnessCertificate certify_linking(const LinkingData& L, const std::optional<Ordering>& supplied) {
    const std::size_t d = L.d();
    require_cardinality(d);
    MildnessCertificate cert;
    cert.linking = L;
    cert.presentation = export_presentation(L);

    std::optional<Ordering> witness, first_vv;
    std::size_t condition_mismatches = 0;
    auto examine = [&](const Ordering& o) {
        ++cert.orderings_examined;
        bool vv = vv_vanishes(o, L);
        bool det_ok = vv && det_mod_p(matrix_A(o, L), L.p) != 0;
        if (check_theorem32_conditions(o, L).all() && !det_ok) ++condition_mismatches;
        if (vv && !first_vv) first_vv = o;
        if (det_ok && !witness) witness = o;
    };

    if (supplied) {
        validate_ordering(*supplied, d);
        examine(*supplied);
    } else {
        Ordering o(d);
        std::iota(o.begin(), o.end(), std::size_t{0});
        do {
            examine(o);
        } while (!witness && std::next_permutation(o.begin() + 1, o.end()));
    }

    if (witness) {
        cert.verdict = Verdict::mild_certified;
        cert.stage = "certified";
        cert.witness = witness;
        cert.reported_ordering = *witness;
        cert.flags = {"fabulous", "duality_group", "scd=3", "not_p_adic_analytic", "euler_characteristic=1", "cd=2"};
    } else {
        cert.verdict = Verdict::not_certified;
        if (supplied) cert.stage = "supplied_ordering_failed";
        else if (first_vv) cert.stage = "det_zero_on_all_VV_orderings";
        else cert.stage = "no_ordering_with_vanishing_VV";
        if (supplied) cert.reported_ordering = *supplied;
        else if (first_vv) cert.reported_ordering = *first_vv;
        else {
            cert.reported_ordering.resize(d);
            std::iota(cert.reported_ordering.begin(), cert.reported_ordering.end(), std::size_t{0});
        }
    }

    const Ordering& o = cert.reported_ordering;
    cert.A = matrix_A(o, L);
    cert.det = det_mod_p(cert.A, L.p);
    cert.conditions = check_theorem32_conditions(o, L);
    cert.direct.vv_vanishing = vv_vanishes(o, L);
    cert.direct.det_nonzero = cert.det != 0;
    bool direct_ok = cert.direct.vv_vanishing && cert.direct.det_nonzero;
    if (cert.conditions.all() != direct_ok)
        cert.warnings.push_back("conditions (1)-(3) and the direct checks disagree on ordering " + join_labels(o, L));
    if (condition_mismatches > 0)
        cert.warnings.push_back(std::to_string(condition_mismatches) +
                                " examined ordering(s) satisfy conditions (1)-(3) but fail the direct checks");
    return cert;
}

Ordering parse_ordering(std::span<const std::string> labels, const LinkingData& L) {
    Ordering o;
    for (const auto& s : labels) {
        std::optional<std::size_t> hit;
        if (s == "1") hit = 0;
        for (std::size_t g = 1; g < L.d() && !hit; ++g)
            if (L.S[g].label() == s) hit = g;
        if (!hit) throw Error(ErrorKind::invalid_input, "ordering label '" + s + "' is not 1 or a place of S other than v0");
        o.push_back(*hit);
    }
    validate_ordering(o, L.d());
    return o;
}

std::vector<std::string> ordering_labels(const Ordering& o, const LinkingData& L) {
    std::vector<std::string> out;
    for (auto g : o) out.push_back(L.label(g));
    return out;
}

MildnessCertificate certify_mild(const QuadField& k, u64 p, std::span<const Place> S,
                                 const std::optional<std::vector<std::string>>& supplied,
                                 const LinkingOverrides& overrides) {
    require_cardinality(S.size());
    ClassGroupData cl = class_group_with_a1(k, p, S);
    LinkingData L = build_linking_data(cl, S, std::nullopt, overrides);
    std::optional<Ordering> o;
    if (supplied) o = parse_ordering(*supplied, L);
    MildnessCertificate cert = certify_linking(L, o);
    cert.classgroup = std::move(cl);
    return cert;
}

// ---------------------------------------------------------------------------

Prop34Report check_prop34(const QuadField& k, u64 p, std::span<const Place> S) {
    if (S.size() != 4) throw Error(ErrorKind::cardinality, "the four-place criterion needs exactly 4 places");
    ClassGroupData cl = class_group_with_a1(k, p, S);
    validate_places(cl, S);
    std::vector<PlaceArith> arith;
    for (const auto& v : S) arith.push_back(place_arith(cl, v));
    std::vector<const PlaceArith*> ptrs;
    for (const auto& a : arith) ptrs.push_back(&a);
    return check_prop34(cl, ptrs);
}

Prop34Report check_prop34(const ClassGroupData& cl, std::span<const PlaceArith* const> roles) {
    if (roles.size() != 4) throw Error(ErrorKind::cardinality, "the four-place criterion needs exactly 4 places");
    const QuadField& k = cl.field;
    const u64 p = cl.p;
    const PlaceArith& v0 = *roles[0];
    const PlaceArith& v1 = *roles[1];
    const PlaceArith& v2 = *roles[2];
    const PlaceArith& v3 = *roles[3];
    Prop34Report r;
    r.cond1 = v0.v.degree() == 1 && v1.v.degree() == 1 && v3.v.degree() == 1 && v2.v.kind == SplitKind::inert;

    r.a1_v0 = v0.a1_residue;
    r.a1_v1 = v1.a1_residue;
    r.a1_v2 = v2.a1_residue;
    r.cond2 = !r.a1_v0->is_one();

    r.varpi_v0_v2 = power_residue(k, v0.pi.varpi, v2.v, p);
    r.cond3 = r.varpi_v0_v2->is_one() && r.a1_v2->is_one();

    r.varpi_v1_v2 = power_residue(k, v1.pi.varpi, v2.v, p);
    r.varpi_v2_v3 = power_residue(k, v2.pi.varpi, v3.v, p);
    r.cond4 = !r.a1_v1->is_one() && !r.varpi_v1_v2->is_one() && !r.varpi_v2_v3->is_one();

    r.l_v0_1 = v0.lw1;
    r.l_v1_1 = v1.lw1;
    r.l_v3_1 = v3.lw1;
    r.cond5 = r.l_v0_1 != 0 && r.l_v3_1 != 0 && r.l_v1_1 == 0;
    if (cl.p_part_order > p)
        r.warnings.push_back("the p-part of the class group has order " + std::to_string(cl.p_part_order) +
                             " > p; condition (5) is read as l_{w,1} mod p");
    return r;
}

}  // namespace mildcert
