// mildcert command-line front end.
// Exit codes: 0 certified (or plain success), 1 not certified, 2 input or precondition error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mildcert/document.hpp"
#include "mildcert/error.hpp"

using namespace mildcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitError = 2;

struct Common {
    i64 d = 0;
    u64 p = 0;
    bool json_out = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("-d", c.d, "squarefree negative radicand of k = Q(sqrt d)")->required();
    sub->add_option("-p", c.p, "odd prime p")->required();
    sub->add_flag("--json", c.json_out, "machine-readable output");
}

std::string residue_text(const ResidueElement& r, const Place& v) {
    if (v.degree() == 1 || r.c1 == 0) return std::to_string(r.c0);
    return std::to_string(r.c0) + "+" + std::to_string(r.c1) + "s";
}

void print_classgroup(const ClassGroupData& cl) {
    std::cout << "field        Q(sqrt(" << cl.field.radicand() << ")), D = " << cl.field.discriminant() << "\n";
    std::cout << "class number " << cl.class_number << "\n";
    std::cout << "forms       ";
    for (const auto& f : cl.forms) std::cout << " " << f.str();
    std::cout << "\n";
    std::cout << cl.p << "-rank       " << cl.p_rank << "\n";
    std::cout << "h            " << cl.h << "  (prime-to-" << cl.p << " part)\n";
    if (cl.a1) {
        std::cout << "a1 prime     " << cl.a1->place.label() << " = " << cl.a1->ideal.str() << "\n";
        std::cout << "q1           " << cl.a1->q1 << "\n";
        std::cout << "a1           " << cl.a1->generator.str() << "  (norm " << cl.a1->generator.norm() << ")\n";
    }
}

void print_linking(const LinkingData& L) {
    std::cout << "S (v0 first):";
    for (const auto& v : L.S) std::cout << " " << v.label();
    std::cout << "\nh^-1 = " << L.h_inv << ", z_{1,1} = q1 = " << L.q1_mod << " mod " << L.p << "\n\n";
    std::cout << "place      N(v)        zeta        a1 residue  z_{1,v}  l_{v,1}  varpi_v\n";
    for (std::size_t i = 0; i < L.d(); ++i) {
        const Place& v = L.S[i];
        std::printf("%-10s %-11llu %-11s %-11s %-8llu %-8llu %s\n", v.label().c_str(),
                    static_cast<unsigned long long>(v.norm()), residue_text(L.zeta[i], v).c_str(),
                    residue_text(L.a1_residue[i], v).c_str(), static_cast<unsigned long long>(L.z1[i]),
                    static_cast<unsigned long long>(L.lw1[i]), L.pi[i].varpi.str().c_str());
    }
    std::cout << "\nvarpi_w residue at v  [dlog l_{w,v}]\n";
    for (std::size_t w = 0; w < L.d(); ++w) {
        std::printf("  w=%-9s", L.S[w].label().c_str());
        for (std::size_t v = 0; v < L.d(); ++v) {
            if (v == w) {
                std::printf("  %-14s", "-");
                continue;
            }
            std::string cell = residue_text(L.varpi_residue[w][v], L.S[v]) + " [" + std::to_string(L.lwv[w][v]) + "]";
            std::printf("  %-14s", cell.c_str());
        }
        std::printf("\n");
    }
    std::cout << "\ncorrected linking numbers, rows w, columns";
    for (std::size_t g = 0; g < L.d(); ++g) std::cout << " " << L.label(g);
    std::cout << "\n";
    for (std::size_t w = 0; w < L.d(); ++w) {
        std::printf("  %-10s", L.S[w].label().c_str());
        for (auto x : L.tilde[w]) std::printf(" %llu", static_cast<unsigned long long>(x));
        std::printf("\n");
    }
}

void print_certificate(const MildnessCertificate& c) {
    const LinkingData& L = c.linking;
    auto join = [](const std::vector<std::string>& xs) {
        std::string s;
        for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
        return "(" + s + ")";
    };
    std::cout << "verdict      " << to_string(c.verdict) << " [" << c.stage << "]\n";
    if (c.witness) std::cout << "witness      " << join(ordering_labels(*c.witness, L)) << "\n";
    std::cout << "ordering     " << join(ordering_labels(c.reported_ordering, L)) << "  (" << c.orderings_examined
              << " examined)\n";
    std::cout << "matrix A over F_" << L.p << ":\n";
    for (const auto& row : c.A) {
        std::cout << "  ";
        for (auto x : row) std::cout << " " << x;
        std::cout << "\n";
    }
    std::cout << "det A        " << c.det << "\n";
    std::cout << "conditions   (1) " << c.conditions.c1 << "  (2) " << c.conditions.c2 << "  (3) " << c.conditions.c3
              << "\n";
    std::cout << "direct       VuV = 0: " << c.direct.vv_vanishing << "  det != 0: " << c.direct.det_nonzero << "\n";
    if (!c.flags.empty()) {
        std::cout << "flags       ";
        for (const auto& f : c.flags) std::cout << " " << f;
        std::cout << "\n";
    }
    for (const auto& w : c.warnings) std::cout << "warning: " << w << "\n";
}

void print_prop34(const Prop34Report& r, std::span<const Place> S) {
    auto res = [](const std::optional<ResidueElement>& x, const Place& v) {
        return x ? residue_text(*x, v) : std::string("?");
    };
    std::cout << "roles  v0=" << S[0].label() << " v1=" << S[1].label() << " v2=" << S[2].label()
              << " v3=" << S[3].label() << "\n";
    std::cout << "(1) degrees: v0, v1, v3 degree one, l2 inert            " << r.cond1 << "\n";
    std::cout << "(2) a1 at v0 = " << res(r.a1_v0, S[0]) << " != 1" << std::string(33, ' ') << r.cond2 << "\n";
    std::cout << "(3) varpi_v0 at v2 = " << res(r.varpi_v0_v2, S[2]) << ", a1 at v2 = " << res(r.a1_v2, S[2])
              << ", both 1    " << r.cond3 << "\n";
    std::cout << "(4) a1 at v1 = " << res(r.a1_v1, S[1]) << ", varpi_v1 at v2 = " << res(r.varpi_v1_v2, S[2])
              << ", varpi_v2 at v3 = " << res(r.varpi_v2_v3, S[3]) << ", none 1  " << r.cond4 << "\n";
    std::cout << "(5) l_{v0,1} = " << r.l_v0_1 << ", l_{v3,1} = " << r.l_v3_1 << " nonzero, l_{v1,1} = " << r.l_v1_1
              << " zero  " << r.cond5 << "\n";
    std::cout << "verdict " << (r.verdict() ? "all conditions hold" : "not all conditions hold") << "\n";
    for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
}

std::vector<std::string> place_labels(std::span<const Place> S) {
    std::vector<std::string> out;
    for (const auto& v : S) out.push_back(v.label());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Presentations and mildness certificates for restricted-ramification pro-p groups over imaginary quadratic fields"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Common c;
    std::string places, ordering, mode = "prop34", checkpoint, replay_file;
    u64 bound = 0;
    std::size_t max_results = 0, cardinality = 4;
    unsigned threads = 1;
    bool all_prop34 = false;

    auto* cg = app.add_subcommand("classgroup", "class group, p-rank and the prime a1");
    add_common(cg, c);

    auto* lk = app.add_subcommand("linking", "linking numbers of a set S");
    add_common(lk, c);
    lk->add_option("--places", places, "places of S, e.g. 13:4,211:71,67,31:15")->required();

    auto* ct = app.add_subcommand("certify", "certify mildness of G_S");
    add_common(ct, c);
    ct->add_option("--places", places, "places of S")->required();
    ct->add_option("--ordering", ordering, "circular ordering to test instead of searching, e.g. 1,211:71,67,31:15");

    auto* pr = app.add_subcommand("prop34", "check the four-place criterion, places in role order v0,v1,v2,v3");
    add_common(pr, c);
    pr->add_option("--places", places, "v0=13:4,v1=211:71,v2=67,v3=31:15 or the same list untagged")->required();

    auto* se = app.add_subcommand("search", "scan for sets S passing the criterion");
    add_common(se, c);
    se->add_option("--bound", bound, "largest rational prime scanned")->required();
    se->add_option("--mode", mode, "prop34 or theorem32")->check(CLI::IsMember({"prop34", "theorem32"}));
    se->add_option("--max-results", max_results, "stop after this many hits (0: no cap)");
    se->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
    se->add_option("--checkpoint", checkpoint, "resume strictly after this tuple, e.g. 13:4/211:71/67:i/31:15");
    se->add_option("--cardinality", cardinality, "|S| in theorem32 mode");
    se->add_flag("--all-prop34", all_prop34, "prop34 mode: report tuples passing the five conditions even when not certified");

    auto* rp = app.add_subcommand("replay", "recompute a certificate document and compare");
    rp->add_option("file", replay_file, "certificate JSON ('-' for stdin)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }

    try {
        if (!*rp && (c.p < 3 || !is_prime(c.p))) throw Error(ErrorKind::invalid_input, "p must be an odd prime, got " + std::to_string(c.p));
        if (*cg) {
            QuadField k = make_field(c.d);
            ClassGroupData cl = enumerate_class_group(k, c.p);
            if (cl.p_rank != 1) {
                if (c.json_out) std::cout << classgroup_json(cl).dump(2) << "\n";
                else print_classgroup(cl);
                std::cerr << "error: the " << c.p << "-rank of the class group is " << cl.p_rank
                          << "; the construction needs p-rank one\n";
                return kExitError;
            }
            cl.a1 = choose_a1(k, cl, {});
            if (c.json_out) std::cout << classgroup_json(cl).dump(2) << "\n";
            else print_classgroup(cl);
            return kExitOk;
        }
        if (*lk) {
            QuadField k = make_field(c.d);
            std::vector<Place> S = parse_place_list(k, places);
            ClassGroupData cl = class_group_with_a1(k, c.p, S);
            LinkingData L = build_linking_data(cl, S);
            if (c.json_out) {
                std::cout << json{{"classgroup", classgroup_json(cl)}, {"linking", linking_json(L)}}.dump(2) << "\n";
            } else {
                print_classgroup(cl);
                std::cout << "\n";
                print_linking(L);
            }
            return kExitOk;
        }
        if (*ct) {
            QuadField k = make_field(c.d);
            std::vector<Place> S = parse_place_list(k, places);
            CertificateInput input{c.d, c.p, place_labels(S), std::nullopt};
            if (!ordering.empty()) input.ordering = split_list(ordering);
            MildnessCertificate cert = certify_mild(k, c.p, S, input.ordering);
            if (c.json_out) {
                std::cout << certificate_document(input, cert).dump(2) << "\n";
            } else {
                print_classgroup(*cert.classgroup);
                std::cout << "\n";
                print_linking(cert.linking);
                std::cout << "\n";
                print_certificate(cert);
            }
            return cert.verdict == Verdict::mild_certified ? kExitOk : kExitNotCertified;
        }
        if (*pr) {
            QuadField k = make_field(c.d);
            std::vector<Place> S = parse_place_list(k, places);
            Prop34Report r = check_prop34(k, c.p, S);
            if (c.json_out) std::cout << prop34_json(r, S).dump(2) << "\n";
            else print_prop34(r, S);
            return r.verdict() ? kExitOk : kExitNotCertified;
        }
        if (*se) {
            SearchSpec spec{make_field(c.d), c.p, bound};
            spec.mode = parse_search_mode(mode);
            spec.max_results = max_results;
            spec.cardinality = cardinality;
            spec.require_certified = !all_prop34;
            spec.threads = threads;
            if (!checkpoint.empty()) spec.checkpoint = checkpoint;
            auto on_hit = [&](const SearchHit& h) {
                if (c.json_out) {
                    std::cout << search_hit_json(h).dump() << "\n";
                } else {
                    std::cout << h.token << "  " << to_string(h.certificate.verdict);
                    if (h.certificate.witness)
                        for (const auto& l : ordering_labels(*h.certificate.witness, h.certificate.linking))
                            std::cout << " " << l;
                    std::cout << "\n";
                }
                std::cout.flush();
            };
            SearchResult res = run_search(spec, on_hit);
            if (c.json_out) {
                std::cout << json{{"summary",
                                   {{"mode", to_string(spec.mode)},
                                    {"bound", bound},
                                    {"candidates", res.candidates},
                                    {"hits", res.hits.size()},
                                    {"resume_token", res.resume_token ? json(*res.resume_token) : json(nullptr)}}}}
                                 .dump()
                          << "\n";
            } else {
                std::cout << "# " << res.hits.size() << " hit(s) from " << res.candidates << " candidate places";
                if (res.resume_token) std::cout << "; resume with --checkpoint " << *res.resume_token;
                std::cout << "\n";
            }
            return kExitOk;
        }
        if (*rp) {
            json doc;
            if (replay_file == "-") {
                doc = json::parse(std::cin);
            } else {
                std::ifstream in(replay_file);
                if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + replay_file);
                doc = json::parse(in);
            }
            std::string diff;
            if (!replay_matches(doc, &diff)) {
                std::cerr << "replay differs: " << diff << "\n";
                return kExitError;
            }
            std::cout << "replay ok: " << doc["certificate"]["verdict"].get<std::string>() << "\n";
            return doc["certificate"]["verdict"] == "mild_certified" ? kExitOk : kExitNotCertified;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kExitError;
    } catch (const json::exception& e) {
        std::cerr << "error (invalid_input): " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
