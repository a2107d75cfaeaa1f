#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mildcert/classgroup.hpp"
#include "mildcert/linking.hpp"
#include "mildcert/mildness.hpp"
#include "mildcert/search.hpp"

namespace mildcert {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kCertificateSchema = "mildcert.certificate";
inline constexpr int kCertificateSchemaVersion = 1;

/// "13:4" (degree-one place with sqrt d = 4 mod 13) or "67" (the unique place above 67).
Place parse_place_spec(const QuadField& k, const std::string& spec);
/// "v2=67": role index and place. Without a tag the role is unset.
std::pair<std::optional<std::size_t>, Place> parse_role_spec(const QuadField& k, const std::string& spec);
/// Comma-separated list; role tags, when present, must name v0..v{n-1} exactly once.
std::vector<Place> parse_place_list(const QuadField& k, const std::string& list);
std::vector<std::string> split_list(const std::string& list);

json element_json(const QuadField& k, const FieldElement& x);
json residue_json(const ResidueElement& r, const Place& v);
json classgroup_json(const ClassGroupData& cl);
json linking_json(const LinkingData& L);
json presentation_json(const Presentation& pres);
json prop34_json(const Prop34Report& r, std::span<const Place> S);

struct CertificateInput {
    i64 d = 0;
    u64 p = 0;
    std::vector<std::string> places;
    std::optional<std::vector<std::string>> ordering;
};

/// Versioned, self-contained certificate document.
json certificate_document(const CertificateInput& input, const MildnessCertificate& cert);

/// Recomputes a certificate from the input echoed in doc.
json recompute_certificate(const json& doc);
/// True when recompute_certificate(doc) equals doc.
bool replay_matches(const json& doc, std::string* first_difference = nullptr);

json search_hit_json(const SearchHit& hit);

}  // namespace mildcert
