// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "mildcert/error.hpp"
#include "mildcert/search.hpp"

using namespace mildcert;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, double seconds, double limit, const std::string& detail) {
    bool in_time = seconds <= limit;
    bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %-4s %.3fs (limit %gs) %s%s\n", pass ? "PASS" : "FAIL", id.c_str(), seconds, limit, detail.c_str(),
                in_time ? "" : " [over time]");
    std::fflush(stdout);
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const QuadField k23 = make_field(-23);

std::vector<Place> worked_example() {
    return {make_place(k23, 13, 4), make_place(k23, 211, 71), make_place(k23, 67), make_place(k23, 31, 15)};
}

bool is_associate(const FieldElement& x, const FieldElement& y) {
    FieldElement u = x / y;
    return u.is_integral() && u.norm() == 1;
}

std::string residue_text(const ResidueElement& r) {
    return r.c1 == 0 ? std::to_string(r.c0) : std::to_string(r.c0) + "+" + std::to_string(r.c1) + "s";
}

// Criterion 1: the worked-example congruences.
void congruences() {
    auto t0 = Clock::now();
    auto S = worked_example();
    ClassGroupData cl = class_group_with_a1(k23, 3, S);
    LinkingData L = build_linking_data(cl, S);
    const FieldElement& a1 = cl.a1->generator;

    struct Item {
        const char* what;
        ResidueElement got;
        u64 want;
    };
    std::vector<Item> items{
        {"a1@v0", L.a1_residue[0], 9},
        {"a1@v1", L.a1_residue[1], 14},
        {"a1@v2", L.a1_residue[2], 1},
        {"varpi_v0@v2", L.varpi_residue[0][2], 1},
        {"varpi_v1@v2", L.varpi_residue[1][2], 37},
        {"varpi_v2@v3", L.varpi_residue[2][3], 5},
    };
    bool ok = is_associate(a1, FieldElement(-23, -2, -1)) && is_associate(L.pi[1].varpi, FieldElement(-23, -2, 3));
    std::ostringstream detail;
    detail << "worked-example congruences:";
    for (const auto& it : items) {
        bool good = it.got == ResidueElement{it.want, 0};
        ok = ok && good;
        detail << " " << it.what << "=" << residue_text(it.got) << (good ? "" : " (want " + std::to_string(it.want) + ")");
    }
    report("1", ok, since(t0), 1.0, detail.str());
}

// Criterion 2: end-to-end certification of the worked example.
void end_to_end() {
    auto t0 = Clock::now();
    auto S = worked_example();
    MildnessCertificate cert = certify_mild(k23, 3, S);
    Prop34Report r = check_prop34(k23, 3, S);
    std::vector<std::string> want{"1", "211:71", "67", "31:15"};
    bool witness_ok = cert.witness && ordering_labels(*cert.witness, cert.linking) == want;
    bool ok = cert.verdict == Verdict::mild_certified && witness_ok && cert.det != 0 && r.verdict();
    std::ostringstream detail;
    detail << "end-to-end certification: verdict=" << to_string(cert.verdict) << " stage=" << cert.stage
           << " det=" << cert.det << " examined=" << cert.orderings_examined << " five-conditions=" << r.cond1
           << r.cond2 << r.cond3 << r.cond4 << r.cond5;
    report("2", ok, since(t0), 5.0, detail.str());
}

// Criterion 3: class group of Q(sqrt -23) and enumeration cross-checks.
void class_groups() {
    auto t0 = Clock::now();
    ClassGroupData cl = class_group_with_a1(k23, 3, {});
    std::vector<QuadForm> want{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}};
    std::vector<QuadForm> got = cl.forms;
    std::sort(got.begin(), got.end(), [](const QuadForm& a, const QuadForm& b) {
        return std::tie(a.a, a.b, a.c) < std::tie(b.a, b.b, b.c);
    });
    const A1Data& a = *cl.a1;
    bool ok = cl.class_number == 3 && got == want && cl.p_rank == 1 && cl.h == 1 && a.ideal.norm() == 3 &&
              a.ideal.contains(FieldElement(-23, -1, 1)) && a.q1 == 3 &&
              is_associate(a.generator, FieldElement(-23, -2, -1));
    u64 h47 = enumerate_class_group(make_field(-47), 3).class_number;
    u64 h4 = enumerate_class_group(make_field(-1), 3).class_number;
    ok = ok && h47 == 5 && h4 == 1;
    std::ostringstream detail;
    detail << "class group suite: h(-23)=" << cl.class_number << " 3-rank=" << cl.p_rank << " h=" << cl.h
           << " a1=" << a.ideal.str() << " q1=" << a.q1 << " a1_gen=" << a.generator.str() << " h(-47)=" << h47
           << " h(-4)=" << h4;
    report("3", ok, since(t0), 1.0, detail.str());
}

std::vector<i64> fundamental_radicands(i64 limit) {
    std::vector<i64> out;
    for (i64 d = -1; d >= -limit; --d) {
        if (!is_squarefree(d)) continue;
        if (-make_field(d).discriminant() <= limit) out.push_back(d);
    }
    return out;
}

void group_axioms() {
    auto t0 = Clock::now();
    std::size_t fields = 0, bad = 0;
    for (i64 d : fundamental_radicands(500)) {
        ++fields;
        CayleyTable T(reduced_forms(make_field(d).discriminant()));
        const std::size_t n = T.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (T.mul(0, i) != i || T.mul(i, T.index_of(inverse_form(T.forms()[i]))) != 0) ++bad;
            for (std::size_t j = 0; j < n; ++j) {
                if (T.mul(i, j) != T.mul(j, i)) ++bad;
                for (std::size_t l = 0; l < n; ++l)
                    if (T.mul(T.mul(i, j), l) != T.mul(i, T.mul(j, l))) ++bad;
            }
        }
    }
    report("4a", bad == 0, since(t0), 30.0,
           "composition group axioms: " + std::to_string(fields) + " fundamental discriminants |D| <= 500, " +
               std::to_string(bad) + " violations");
}

void principal_generators() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    std::size_t tried = 0, bad = 0;
    std::vector<i64> fields;
    while (fields.size() < 10) {
        i64 d = -static_cast<i64>(rng() % 100000) - 1;
        if (is_squarefree(d) && std::find(fields.begin(), fields.end(), d) == fields.end()) fields.push_back(d);
    }
    for (i64 d : fields) {
        QuadField k = make_field(d);
        for (int i = 0; i < 20; ++i) {
            Integer x(static_cast<long>(rng() % 200001) - 100000), y(static_cast<long>(rng() % 2001) - 1000);
            if (x == 0 && y == 0) x = 1;
            FieldElement e = FieldElement::from_omega(k, x, y);
            ++tried;
            if (!is_associate(principal_generator(IntegralIdeal::principal(k, e)), e)) ++bad;
        }
    }
    report("4b", bad == 0, since(t0), 30.0,
           "principal generators: " + std::to_string(tried) + " random elements over 10 random fields, " +
               std::to_string(bad) + " failures");
}

void invariance() {
    auto t0 = Clock::now();
    auto S = worked_example();
    ClassGroupData cl = class_group_with_a1(k23, 3, S);
    LinkingData base = build_linking_data(cl, S);
    const Verdict reference = certify_mild(k23, 3, S).verdict;
    std::size_t runs = 0, bad = 0;
    // every zeta at every place, every sign of a1 and of each varpi
    for (unsigned zmask = 0; zmask < 16; ++zmask)
        for (unsigned smask = 0; smask < 32; ++smask) {
            LinkingOverrides ov;
            for (unsigned i = 0; i < 4; ++i) ov.zeta_power.push_back((zmask >> i) & 1 ? 2 : 1);
            ov.a1 = (smask & 1) ? -cl.a1->generator : cl.a1->generator;
            for (unsigned i = 0; i < 4; ++i)
                ov.varpi.push_back((smask >> (i + 1)) & 1 ? -base.pi[i].varpi : base.pi[i].varpi);
            ++runs;
            if (certify_mild(k23, 3, S, std::nullopt, ov).verdict != reference) ++bad;
        }
    std::vector<std::size_t> rest{1, 2, 3};
    do {
        std::vector<Place> T{S[0], S[rest[0]], S[rest[1]], S[rest[2]]};
        ++runs;
        if (certify_mild(k23, 3, T).verdict != reference) ++bad;
    } while (std::next_permutation(rest.begin(), rest.end()));
    report("4c", bad == 0, since(t0), 30.0,
           "verdict invariance (zeta, associates, order of S): " + std::to_string(runs) + " runs, verdict " +
               std::string(to_string(reference)) + ", " + std::to_string(bad) + " changes");
}

LinkingData synthetic_instance(std::mt19937_64& rng, u64 p, std::size_t d, const Ordering& o, bool vanish_at_v0) {
    auto r = [&] { return rng() % p; };
    std::vector<u64> z1(d), lw1(d);
    std::vector<std::vector<u64>> l(d, std::vector<u64>(d));
    for (auto& x : z1) x = r();
    z1[0] = 1 + rng() % (p - 1);
    for (auto& x : lw1) x = r();
    for (auto& row : l)
        for (auto& x : row) x = r();
    // condition (1)
    l[0][o[2]] = l[0][o[d - 2]] = 0;
    for (std::size_t j = 2; j <= d - 2; ++j) z1[o[j]] = 0;
    // condition (2), on the pairs where both linking numbers are defined
    for (std::size_t a = 0; a < d; a += 2)
        for (std::size_t b = 0; b < d; b += 2) {
            if (a == b || o[a] == 0) continue;
            if (o[b] == 0) lw1[o[a]] = 0;
            else l[o[a]][o[b]] = 0;
        }
    if (vanish_at_v0) l[o[2]][0] = l[o[d - 2]][0] = 0;
    // z_{1,1} = q1 = 0 mod p: the class of a1 is not a p-th power
    return LinkingData::synthetic(p, z1, lw1, l, 1 + rng() % (p - 1), 0);
}

void closed_form(bool vanish_at_v0) {
    auto t0 = Clock::now();
    std::mt19937_64 rng(vanish_at_v0 ? 77 : 76);
    const u64 primes[] = {3, 5, 7};
    std::size_t tried = 0, bad = 0;
    std::string first_bad;
    for (std::size_t d : {4u, 6u})
        for (int it = 0; it < 250; ++it) {
            u64 p = primes[it % 3];
            Ordering o(d);
            std::iota(o.begin(), o.end(), std::size_t{0});
            std::shuffle(o.begin() + 1, o.end(), rng);
            LinkingData L = synthetic_instance(rng, p, d, o, vanish_at_v0);
            auto c = check_theorem32_conditions(o, L);
            if (!c.c1 || !c.c2) {
                ++bad;
                continue;
            }
            ++tried;
            u64 gauss = det_mod_p(matrix_A(o, L), p), closed = closed_form_det(o, L);
            if (gauss != closed) {
                ++bad;
                if (first_bad.empty())
                    first_bad = " (first: d=" + std::to_string(d) + " p=" + std::to_string(p) +
                                " elimination=" + std::to_string(gauss) + " closed=" + std::to_string(closed) + ")";
            }
        }
    if (vanish_at_v0)
        report("S1", bad == 0, since(t0), 30.0,
               "supplementary, closed-form det with l_{o(2),v0} = l_{o(d-2),v0} = 0 added: " + std::to_string(tried) +
                   " instances, " + std::to_string(bad) + " mismatches");
    else
        report("4d", bad == 0, since(t0), 30.0,
               "closed-form det vs elimination under circular conditions (1),(2): " + std::to_string(tried) +
                   " instances, " + std::to_string(bad) + " mismatches" + first_bad);
}

void five_conditions_imply_certified() {
    auto t0 = Clock::now();
    SearchSpec spec{k23, 3, 400};
    spec.require_certified = false;
    spec.threads = 8;
    SearchResult r = run_search(spec);
    std::size_t bad = 0;
    std::string first_bad;
    for (const auto& h : r.hits)
        if (h.certificate.verdict != Verdict::mild_certified) {
            if (first_bad.empty()) first_bad = " (first: " + h.token + ", " + h.certificate.stage + ")";
            ++bad;
        }
    report("4e", bad == 0 && !r.hits.empty(), since(t0), 30.0,
           "five conditions => certified, bound 400: " + std::to_string(r.hits.size()) + " hits, " +
               std::to_string(bad) + " not certified" + first_bad);
}

void search_regression() {
    auto t0 = Clock::now();
    std::vector<std::vector<std::string>> runs;
    for (unsigned threads : {1u, 4u, 8u}) {
        SearchSpec spec{k23, 3, 211};
        spec.threads = threads;
        SearchResult r = run_search(spec);
        std::vector<std::string> toks;
        for (const auto& h : r.hits) toks.push_back(h.token);
        runs.push_back(std::move(toks));
    }
    bool deterministic = runs[0] == runs[1] && runs[0] == runs[2];
    // the worked example and its conjugate-root variants
    std::vector<std::string> targets;
    for (u64 r0 : {4u, 9u})
        for (u64 r1 : {71u, 140u})
            for (u64 r3 : {15u, 16u})
                targets.push_back("13:" + std::to_string(r0) + "/211:" + std::to_string(r1) + "/67:i/31:" +
                                  std::to_string(r3));
    std::string found;
    for (const auto& t : runs[0])
        if (std::find(targets.begin(), targets.end(), t) != targets.end()) found = t;
    report("5", deterministic && !found.empty(), since(t0), 120.0,
           "search regression, bound 211: " + std::to_string(runs[0].size()) + " hits, deterministic over 1/4/8 threads: " +
               (deterministic ? "yes" : "no") + ", worked example emitted: " + (found.empty() ? "no" : found));
}

void conditions_imply_direct() {
    auto t0 = Clock::now();
    SearchSpec spec{k23, 3, 211};
    spec.require_certified = false;
    spec.threads = 8;
    SearchResult r = run_search(spec);
    std::size_t orderings = 0, with_conditions = 0, bad = 0;
    for (const auto& h : r.hits) {
        const LinkingData& L = h.certificate.linking;
        Ordering o(L.d());
        std::iota(o.begin(), o.end(), std::size_t{0});
        do {
            ++orderings;
            if (!check_theorem32_conditions(o, L).all()) continue;
            ++with_conditions;
            if (!(vv_vanishes(o, L) && det_mod_p(matrix_A(o, L), L.p) != 0)) ++bad;
        } while (std::next_permutation(o.begin() + 1, o.end()));
    }
    report("S2", bad == 0, since(t0), 30.0,
           "supplementary, circular conditions => direct checks on search tuples, bound 211: " +
               std::to_string(with_conditions) + " of " + std::to_string(orderings) + " orderings satisfy them, " +
               std::to_string(bad) + " fail the direct checks");
}

void certified_hits_reverify() {
    auto t0 = Clock::now();
    SearchSpec spec{k23, 3, 211};
    spec.threads = 8;
    SearchResult r = run_search(spec);
    std::size_t bad = 0;
    for (const auto& h : r.hits) {
        MildnessCertificate again = certify_mild(k23, 3, h.S);
        if (again.verdict != Verdict::mild_certified || again.witness != h.certificate.witness) ++bad;
    }
    report("S3", bad == 0 && !r.hits.empty(), since(t0), 30.0,
           "supplementary, certified search hits re-verify from scratch, bound 211: " + std::to_string(r.hits.size()) +
               " hits, " + std::to_string(bad) + " failures");
}

template <class F>
void guarded(const char* id, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        ++failures;
        std::printf("FAIL %-4s error: %s\n", id, e.what());
    }
}

}  // namespace

int main() {
    guarded("1", congruences);
    guarded("2", end_to_end);
    guarded("3", class_groups);
    guarded("4a", group_axioms);
    guarded("4b", principal_generators);
    guarded("4c", invariance);
    guarded("4d", [] { closed_form(false); });
    guarded("4e", five_conditions_imply_certified);
    guarded("5", search_regression);
    guarded("S1", [] { closed_form(true); });
    guarded("S2", conditions_imply_direct);
    guarded("S3", certified_hits_reverify);
    std::printf("%d failing\n", failures);
    return failures == 0 ? 0 : 1;
}
