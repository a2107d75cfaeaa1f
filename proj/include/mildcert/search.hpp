#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mildcert/classgroup.hpp"
#include "mildcert/linking.hpp"
#include "mildcert/mildness.hpp"

namespace mildcert {

enum class SearchMode { prop34, theorem32 };
std::string_view to_string(SearchMode m);
SearchMode parse_search_mode(std::string_view s);

struct SearchSpec {
    QuadField field;
    u64 p = 3;
    u64 ell_bound = 0;
    SearchMode mode = SearchMode::prop34;
    std::size_t max_results = 0;     // 0: no cap
    std::size_t cardinality = 4;     // theorem32 mode only
    bool require_certified = true;   // prop34 mode: also demand a certificate
    unsigned threads = 1;
    std::optional<std::string> checkpoint;  // resume strictly after this tuple
};

struct SearchHit {
    std::vector<Place> S;  // role order v0, v1, v2, v3 in prop34 mode
    MildnessCertificate certificate;
    std::optional<Prop34Report> prop34;
    std::string token;
};

struct SearchResult {
    ClassGroupData classgroup;
    std::vector<SearchHit> hits;
    std::size_t candidates = 0;
    std::size_t tuples_examined = 0;  // tuples reaching the full check
    std::optional<std::string> resume_token;  // set when stopped by max_results
};

/// Class group with a1 chosen against an empty S; every search uses it.
ClassGroupData search_class_group(const QuadField& k, u64 p);

/// Places over odd ell <= ell_bound, unramified, ell != p, ell != ell(a1), with
/// N(v) = 1 mod p, in (ell, root) order, each with its cached arithmetic.
std::vector<PlaceArith> candidate_places(const ClassGroupData& cl, u64 ell_bound, unsigned threads = 1);

/// "13:4/211:71/67:i/31:15".
std::string make_token(std::span<const Place> S);
std::vector<Place> parse_token(const QuadField& k, const std::string& token);

using HitCallback = std::function<void(const SearchHit&)>;

/// Hits are reported (and passed to on_hit) in increasing lexicographic order of
/// the place tuple, independent of the thread count.
SearchResult find_prop34_quadruples(const SearchSpec& spec, const HitCallback& on_hit = {});
SearchResult find_theorem32_sets(const SearchSpec& spec, const HitCallback& on_hit = {});
SearchResult run_search(const SearchSpec& spec, const HitCallback& on_hit = {});

}  // namespace mildcert
