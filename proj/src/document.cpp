#include "mildcert/document.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mildcert/error.hpp"

namespace mildcert {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

u64 parse_u64(const std::string& s, const std::string& context) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw Error(ErrorKind::invalid_input, "expected a nonnegative integer in '" + context + "'");
    try {
        return std::stoull(s);
    } catch (const std::out_of_range&) {
        throw Error(ErrorKind::invalid_input, "number too large in '" + context + "'");
    }
}

json matrix_json(const std::vector<std::vector<u64>>& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

json form_json(const QuadForm& f) { return json::array({to_string(f.a), to_string(f.b), to_string(f.c)}); }

}  // namespace

std::vector<std::string> split_list(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Place parse_place_spec(const QuadField& k, const std::string& raw) {
    const std::string spec = trim(raw);
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        u64 ell = parse_u64(spec, spec);
        if (ell >= kMaxResidueChar) throw Error(ErrorKind::unsupported, "prime " + spec + " exceeds the supported range");
        return make_place(k, ell);
    }
    u64 ell = parse_u64(spec.substr(0, colon), spec);
    u64 root = parse_u64(spec.substr(colon + 1), spec);
    if (ell >= kMaxResidueChar) throw Error(ErrorKind::unsupported, "prime exceeds the supported range in '" + spec + "'");
    return make_place(k, ell, root);
}

std::pair<std::optional<std::size_t>, Place> parse_role_spec(const QuadField& k, const std::string& raw) {
    const std::string spec = trim(raw);
    auto eq = spec.find('=');
    if (eq == std::string::npos) return {std::nullopt, parse_place_spec(k, spec)};
    std::string tag = trim(spec.substr(0, eq));
    if (tag.size() < 2 || tag[0] != 'v') throw Error(ErrorKind::invalid_input, "bad role tag in '" + spec + "'");
    return {parse_u64(tag.substr(1), spec), parse_place_spec(k, spec.substr(eq + 1))};
}

std::vector<Place> parse_place_list(const QuadField& k, const std::string& list) {
    std::vector<std::pair<std::optional<std::size_t>, Place>> items;
    for (const auto& s : split_list(list)) items.push_back(parse_role_spec(k, s));
    bool tagged = std::any_of(items.begin(), items.end(), [](const auto& it) { return it.first.has_value(); });
    std::vector<Place> out;
    if (!tagged) {
        for (auto& it : items) out.push_back(it.second);
        return out;
    }
    std::vector<std::optional<Place>> slots(items.size());
    for (auto& [role, v] : items) {
        if (!role) throw Error(ErrorKind::invalid_input, "either tag every place with its role or none");
        if (*role >= items.size() || slots[*role])
            throw Error(ErrorKind::invalid_input, "roles must be v0..v" + std::to_string(items.size() - 1) + ", once each");
        slots[*role] = v;
    }
    for (auto& s : slots) out.push_back(*s);
    return out;
}

json element_json(const QuadField& k, const FieldElement& x) {
    json j{{"text", x.str()}, {"a", to_string(x.a())}, {"b", to_string(x.b())}, {"den", to_string(x.den())}};
    if (x.is_integral()) {
        auto [u, v] = x.omega_coords();
        j["omega_coords"] = json::array({to_string(u), to_string(v)});
    }
    (void)k;
    return j;
}

json residue_json(const ResidueElement& r, const Place& v) {
    if (v.degree() == 1 || r.c1 == 0) return r.c0;
    return json{{"c0", r.c0}, {"c1", r.c1}};
}

json classgroup_json(const ClassGroupData& cl) {
    json forms = json::array();
    for (const auto& f : cl.forms) forms.push_back(form_json(f));
    json j{{"radicand", cl.field.radicand()},
           {"discriminant", cl.field.discriminant()},
           {"p", cl.p},
           {"class_number", cl.class_number},
           {"forms", forms},
           {"p_rank", cl.p_rank},
           {"h", cl.h},
           {"p_part_order", cl.p_part_order}};
    if (cl.a1) {
        const A1Data& a = *cl.a1;
        j["a1"] = json{{"place", a.place.label()},
                       {"ideal", a.ideal.str()},
                       {"norm", to_string(a.ideal.norm())},
                       {"form", form_json(a.form)},
                       {"q1", a.q1},
                       {"generator", element_json(cl.field, a.generator)}};
    } else {
        j["a1"] = nullptr;
    }
    return j;
}

json linking_json(const LinkingData& L) {
    json labels = json::array(), places = json::array();
    for (std::size_t g = 0; g < L.d(); ++g) labels.push_back(L.label(g));
    for (const auto& v : L.S) places.push_back(v.label());
    json j{{"p", L.p},
           {"S", places},
           {"v0", L.S.empty() ? json(nullptr) : json(L.S[0].label())},
           {"generator_labels", labels},
           {"h_inv", L.h_inv},
           {"q1_mod", L.q1_mod},
           {"z1", L.z1},
           {"l_w1", L.lw1},
           {"l_wv", matrix_json(L.lwv)},
           {"tilde", matrix_json(L.tilde)}};
    if (!L.zeta.empty()) {
        json zeta = json::array(), a1r = json::array(), varpi = json::array(), vres = json::array();
        for (std::size_t i = 0; i < L.d(); ++i) {
            zeta.push_back(residue_json(L.zeta[i], L.S[i]));
            a1r.push_back(residue_json(L.a1_residue[i], L.S[i]));
            const PiData& pi = L.pi[i];
            QuadField k = make_field(pi.varpi.radicand());
            varpi.push_back(json{{"place", pi.w.label()}, {"l_w1", pi.l_w1}, {"varpi", element_json(k, pi.varpi)}});
            json row = json::array();
            for (std::size_t v = 0; v < L.d(); ++v)
                row.push_back(v == i ? json(nullptr) : residue_json(L.varpi_residue[i][v], L.S[v]));
            vres.push_back(row);
        }
        j["zeta"] = zeta;
        j["a1_residue"] = a1r;
        j["varpi"] = varpi;
        j["varpi_residue"] = vres;
    }
    return j;
}

json presentation_json(const Presentation& pres) {
    json rels = json::array();
    for (const auto& r : pres.relations)
        rels.push_back(json{{"place", r.place}, {"exponent", to_string(r.exponent)}, {"y", r.y}});
    return json{{"d", pres.d}, {"r", pres.r}, {"generators", pres.generators}, {"relations", rels}};
}

json prop34_json(const Prop34Report& r, std::span<const Place> S) {
    auto res = [](const std::optional<ResidueElement>& x, const Place& v) {
        return x ? residue_json(*x, v) : json(nullptr);
    };
    json roles = json::array();
    for (const auto& v : S) roles.push_back(v.label());
    return json{{"roles", roles},
                {"cond1", r.cond1},
                {"cond2", r.cond2},
                {"cond3", r.cond3},
                {"cond4", r.cond4},
                {"cond5", r.cond5},
                {"verdict", r.verdict()},
                {"residues",
                 {{"a1_at_v0", res(r.a1_v0, S[0])},
                  {"a1_at_v1", res(r.a1_v1, S[1])},
                  {"a1_at_v2", res(r.a1_v2, S[2])},
                  {"varpi_v0_at_v2", res(r.varpi_v0_v2, S[2])},
                  {"varpi_v1_at_v2", res(r.varpi_v1_v2, S[2])},
                  {"varpi_v2_at_v3", res(r.varpi_v2_v3, S[3])}}},
                {"class_linking", {{"l_v0_1", r.l_v0_1}, {"l_v1_1", r.l_v1_1}, {"l_v3_1", r.l_v3_1}}},
                {"warnings", r.warnings}};
}

namespace {

json certificate_body(const MildnessCertificate& c) {
    const LinkingData& L = c.linking;
    return json{{"verdict", to_string(c.verdict)},
                {"stage", c.stage},
                {"witness_ordering", c.witness ? json(ordering_labels(*c.witness, L)) : json(nullptr)},
                {"reported_ordering", ordering_labels(c.reported_ordering, L)},
                {"matrix_A", matrix_json(c.A)},
                {"det_A", c.det},
                {"conditions", {{"c1", c.conditions.c1}, {"c2", c.conditions.c2}, {"c3", c.conditions.c3}}},
                {"direct_checks", {{"vv_vanishing", c.direct.vv_vanishing}, {"det_nonzero", c.direct.det_nonzero}}},
                {"flags", c.flags},
                {"warnings", c.warnings},
                {"orderings_examined", c.orderings_examined}};
}

}  // namespace

json certificate_document(const CertificateInput& input, const MildnessCertificate& cert) {
    json in{{"d", input.d}, {"p", input.p}, {"places", input.places},
            {"ordering", input.ordering ? json(*input.ordering) : json(nullptr)}};
    QuadField k = make_field(input.d);
    return json{{"schema", kCertificateSchema},
                {"version", kCertificateSchemaVersion},
                {"tool_version", kToolVersion},
                {"input", in},
                {"field", {{"d", k.radicand()}, {"D", k.discriminant()}}},
                {"classgroup", cert.classgroup ? classgroup_json(*cert.classgroup) : json(nullptr)},
                {"linking", linking_json(cert.linking)},
                {"presentation", presentation_json(cert.presentation)},
                {"certificate", certificate_body(cert)}};
}

json recompute_certificate(const json& doc) {
    if (!doc.is_object() || doc.value("schema", "") != kCertificateSchema)
        throw Error(ErrorKind::invalid_input, "not a certificate document");
    if (doc.value("version", 0) != kCertificateSchemaVersion)
        throw Error(ErrorKind::unsupported, "unsupported certificate schema version");
    try {
        const json& in = doc.at("input");
        CertificateInput input;
        input.d = in.at("d").get<i64>();
        input.p = in.at("p").get<u64>();
        input.places = in.at("places").get<std::vector<std::string>>();
        if (!in.at("ordering").is_null()) input.ordering = in.at("ordering").get<std::vector<std::string>>();
        QuadField k = make_field(input.d);
        std::string joined;
        for (const auto& s : input.places) joined += (joined.empty() ? "" : ",") + s;
        std::vector<Place> S = parse_place_list(k, joined);
        return certificate_document(input, certify_mild(k, input.p, S, input.ordering));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::invalid_input, std::string("malformed certificate input: ") + e.what());
    }
}

bool replay_matches(const json& doc, std::string* first_difference) {
    json again = recompute_certificate(doc);
    if (again == doc) return true;
    if (first_difference) {
        json patch = json::diff(doc, again);
        *first_difference = patch.empty() ? "" : patch[0].dump();
    }
    return false;
}

json search_hit_json(const SearchHit& hit) {
    json S = json::array();
    for (const auto& v : hit.S) S.push_back(v.label());
    const MildnessCertificate& c = hit.certificate;
    json j{{"token", hit.token},
           {"S", S},
           {"verdict", to_string(c.verdict)},
           {"stage", c.stage},
           {"witness_ordering", c.witness ? json(ordering_labels(*c.witness, c.linking)) : json(nullptr)},
           {"det_A", c.det}};
    if (hit.prop34) j["prop34"] = prop34_json(*hit.prop34, hit.S);
    return j;
}

}  // namespace mildcert
