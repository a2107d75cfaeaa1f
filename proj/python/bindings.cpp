#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mildcert/document.hpp"
#include "mildcert/error.hpp"

namespace py = pybind11;
using namespace mildcert;

namespace {

py::object to_py(const json& j) {
    switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
        py::list out;
        for (const auto& x : j) out.append(to_py(x));
        return out;
    }
    case json::value_t::object: {
        py::dict out;
        for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
        return out;
    }
    default: return py::none();
    }
}

json from_py(const py::handle& obj) {
    std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return json::parse(text);
}

std::vector<Place> places_of(const QuadField& k, const std::vector<std::string>& specs) {
    std::string joined;
    for (const auto& s : specs) joined += (joined.empty() ? "" : ",") + s;
    return parse_place_list(k, joined);
}

std::vector<std::string> labels_of(const std::vector<Place>& S) {
    std::vector<std::string> out;
    for (const auto& v : S) out.push_back(v.label());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "class groups, linking numbers and mildness certificates";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "MildcertError", PyExc_ValueError);

    m.def("split_prime", [](i64 d, u64 ell) {
        QuadField k = make_field(d);
        py::list out;
        for (const auto& v : split_prime(k, ell)) {
            py::dict e;
            e["label"] = v.label();
            e["kind"] = std::string(to_string(v.kind));
            e["degree"] = v.degree();
            e["norm"] = v.norm();
            out.append(e);
        }
        return out;
    }, py::arg("d"), py::arg("ell"));

    m.def("class_group", [](i64 d, u64 p) {
        QuadField k = make_field(d);
        ClassGroupData cl = enumerate_class_group(k, p);
        if (cl.p_rank == 1) cl.a1 = choose_a1(k, cl, {});
        return to_py(classgroup_json(cl));
    }, py::arg("d"), py::arg("p"));

    m.def("power_residue", [](i64 d, std::string a, std::string b, std::string den, const std::string& place, u64 p) {
        QuadField k = make_field(d);
        FieldElement x(d, Integer(a), Integer(b), Integer(den));
        Place v = parse_place_spec(k, place);
        return to_py(residue_json(power_residue(k, x, v, p), v));
    }, py::arg("d"), py::arg("a"), py::arg("b") = "0", py::arg("den") = "1", py::arg("place"), py::arg("p"),
          "residue of (a + b sqrt d)/den raised to (N(v)-1)/p at the place");

    m.def("linking", [](i64 d, u64 p, const std::vector<std::string>& places) {
        QuadField k = make_field(d);
        std::vector<Place> S = places_of(k, places);
        ClassGroupData cl = class_group_with_a1(k, p, S);
        LinkingData L = build_linking_data(cl, S);
        return to_py(json{{"classgroup", classgroup_json(cl)}, {"linking", linking_json(L)}});
    }, py::arg("d"), py::arg("p"), py::arg("places"));

    m.def("certify", [](i64 d, u64 p, const std::vector<std::string>& places,
                        std::optional<std::vector<std::string>> ordering) {
        json doc;
        {
            py::gil_scoped_release release;
            QuadField k = make_field(d);
            std::vector<Place> S = places_of(k, places);
            CertificateInput input{d, p, labels_of(S), ordering};
            doc = certificate_document(input, certify_mild(k, p, S, ordering));
        }
        return to_py(doc);
    }, py::arg("d"), py::arg("p"), py::arg("places"), py::arg("ordering") = py::none());

    m.def("prop34", [](i64 d, u64 p, const std::vector<std::string>& places) {
        QuadField k = make_field(d);
        std::vector<Place> S = places_of(k, places);
        return to_py(prop34_json(check_prop34(k, p, S), S));
    }, py::arg("d"), py::arg("p"), py::arg("places"));

    m.def("search", [](i64 d, u64 p, u64 bound, const std::string& mode, std::size_t max_results, unsigned threads,
                       std::optional<std::string> checkpoint, bool require_certified, std::size_t cardinality) {
        json out;
        {
            py::gil_scoped_release release;
            SearchSpec spec{make_field(d), p, bound};
            spec.mode = parse_search_mode(mode);
            spec.max_results = max_results;
            spec.threads = threads;
            spec.checkpoint = checkpoint;
            spec.require_certified = require_certified;
            spec.cardinality = cardinality;
            SearchResult res = run_search(spec);
            json hits = json::array();
            for (const auto& h : res.hits) hits.push_back(search_hit_json(h));
            out = json{{"candidates", res.candidates},
                       {"hits", hits},
                       {"resume_token", res.resume_token ? json(*res.resume_token) : json(nullptr)}};
        }
        return to_py(out);
    }, py::arg("d"), py::arg("p"), py::arg("bound"), py::arg("mode") = "prop34", py::arg("max_results") = 0,
          py::arg("threads") = 1, py::arg("checkpoint") = py::none(), py::arg("require_certified") = true,
          py::arg("cardinality") = 4);

    m.def("replay", [](const py::object& doc) { return replay_matches(from_py(doc)); }, py::arg("document"),
          "recompute a certificate document and compare it with the given one");
}
