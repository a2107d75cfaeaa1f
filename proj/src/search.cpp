#include "mildcert/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "mildcert/error.hpp"

namespace mildcert {

std::string_view to_string(SearchMode m) { return m == SearchMode::prop34 ? "prop34" : "theorem32"; }

SearchMode parse_search_mode(std::string_view s) {
    if (s == "prop34") return SearchMode::prop34;
    if (s == "theorem32") return SearchMode::theorem32;
    throw Error(ErrorKind::invalid_input, "unknown search mode '" + std::string(s) + "'");
}

ClassGroupData search_class_group(const QuadField& k, u64 p) { return class_group_with_a1(k, p, {}); }

namespace {

unsigned worker_count(unsigned threads, std::size_t jobs) {
    unsigned t = std::max(1u, threads);
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, jobs)));
}

// Runs job(i) for i < n on a pool; results are collected by index.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job job) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    unsigned t = worker_count(threads, n);
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < t; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

struct ShardOut {
    std::vector<SearchHit> hits;
    std::size_t examined = 0;
};

// Shards run in any order; their output is merged strictly by shard index.
// emit returns false to stop the whole scan.
template <class ShardFn, class Emit>
void run_sharded(std::size_t n, unsigned threads, ShardFn shard, Emit emit) {
    std::vector<std::optional<ShardOut>> done(n);
    std::size_t prefix = 0;
    std::atomic<bool> stop{false};
    std::mutex m;
    parallel_for(n, threads, [&](std::size_t i) {
        if (stop) return;
        ShardOut out;
        shard(i, out, stop);
        std::lock_guard lock(m);
        done[i] = std::move(out);
        while (prefix < n && done[prefix] && !stop) {
            if (!emit(*done[prefix])) stop = true;
            done[prefix].reset();
            ++prefix;
        }
    });
}

bool tuple_less(std::span<const Place> a, std::span<const Place> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<PlaceArith> candidate_places(const ClassGroupData& cl, u64 ell_bound, unsigned threads) {
    if (!cl.a1) throw Error(ErrorKind::internal, "candidate_places needs a1");
    if (ell_bound >= kMaxResidueChar) throw Error(ErrorKind::unsupported, "bound exceeds the supported range");
    std::vector<Place> places;
    for (u64 ell = 3; ell <= ell_bound; ell += 2) {
        if (ell == cl.p || ell == cl.a1->place.ell || !is_prime(ell)) continue;
        for (const auto& v : split_prime(cl.field, ell)) {
            if (v.kind == SplitKind::ramified) continue;
            if ((v.norm() - 1) % cl.p != 0) continue;
            places.push_back(v);
        }
    }
    std::vector<std::optional<PlaceArith>> slots(places.size());
    parallel_for(places.size(), threads, [&](std::size_t i) { slots[i] = place_arith(cl, places[i]); });
    std::vector<PlaceArith> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::string make_token(std::span<const Place> S) {
    std::string s;
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (i) s += "/";
        s += std::to_string(S[i].ell) + ":" + (S[i].kind == SplitKind::inert ? "i" : std::to_string(S[i].root));
    }
    return s;
}

std::vector<Place> parse_token(const QuadField& k, const std::string& token) {
    std::vector<Place> out;
    std::stringstream ss(token);
    std::string part;
    while (std::getline(ss, part, '/')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::invalid_input, "bad checkpoint entry '" + part + "'");
        try {
            u64 ell = std::stoull(part.substr(0, colon));
            std::string r = part.substr(colon + 1);
            if (r == "i") {
                Place v = make_place(k, ell);
                if (v.kind != SplitKind::inert) throw Error(ErrorKind::invalid_input, part + " is not inert");
                out.push_back(v);
            } else {
                out.push_back(make_place(k, ell, std::stoull(r)));
            }
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::invalid_input, "bad checkpoint entry '" + part + "'");
        }
    }
    if (out.empty()) throw Error(ErrorKind::invalid_input, "empty checkpoint token");
    return out;
}

SearchResult find_prop34_quadruples(const SearchSpec& spec, const HitCallback& on_hit) {
    if (spec.mode != SearchMode::prop34) throw Error(ErrorKind::invalid_input, "find_prop34_quadruples needs mode prop34");
    if (spec.ell_bound < spec.p + 1) throw Error(ErrorKind::invalid_input, "bound must be at least p + 1");
    SearchResult result{search_class_group(spec.field, spec.p), {}, 0, 0, std::nullopt};
    const ClassGroupData& cl = result.classgroup;
    const u64 p = cl.p;
    const std::vector<PlaceArith> cands = candidate_places(cl, spec.ell_bound, spec.threads);
    result.candidates = cands.size();

    std::optional<std::vector<Place>> tok;
    if (spec.checkpoint) {
        tok = parse_token(spec.field, *spec.checkpoint);
        if (tok->size() != 4) throw Error(ErrorKind::invalid_input, "prop34 checkpoints name four places");
    }

    // role filters read off the cached classification
    std::vector<std::size_t> R0, R1, R2, R3;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const PlaceArith& c = cands[i];
        bool deg1 = c.v.degree() == 1;
        bool a1_one = c.a1_residue.is_one();
        if (deg1 && !a1_one && c.lw1 != 0) R0.push_back(i);
        if (deg1 && !a1_one && c.lw1 == 0) R1.push_back(i);
        if (!deg1 && a1_one) R2.push_back(i);
        if (deg1 && c.lw1 != 0) R3.push_back(i);
    }

    // residue of varpi_w at v is 1: rows R0, R1 against R2, rows R2 against R3
    const std::size_t n = cands.size();
    std::vector<std::vector<signed char>> one(n);
    std::vector<std::pair<std::size_t, const std::vector<std::size_t>*>> rows;
    for (auto w : R0) rows.push_back({w, &R2});
    for (auto w : R1) rows.push_back({w, &R2});
    for (auto w : R2) rows.push_back({w, &R3});
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::vector<std::vector<std::pair<std::size_t, signed char>>> row_vals(rows.size());
    parallel_for(rows.size(), spec.threads, [&](std::size_t r) {
        auto [w, cols] = rows[r];
        for (auto v : *cols) {
            if (v == w) continue;
            bool is_one = power_residue(cl.field, cands[w].pi.varpi, cands[v].v, p).is_one();
            row_vals[r].push_back({v, is_one ? 1 : 0});
        }
    });
    for (auto& r : one) r.assign(n, -1);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (auto [v, val] : row_vals[r]) one[rows[r].first][v] = val;

    const std::size_t cap = spec.max_results;
    auto shard = [&](std::size_t s, ShardOut& out, const std::atomic<bool>& stop) {
        const std::size_t i0 = R0[s];
        const Place& v0 = cands[i0].v;
        if (tok && v0 < (*tok)[0]) return;
        const bool eq0 = tok && v0 == (*tok)[0];
        for (auto i1 : R1) {
            const Place& v1 = cands[i1].v;
            if (i1 == i0 || (eq0 && v1 < (*tok)[1])) continue;
            const bool eq1 = eq0 && v1 == (*tok)[1];
            for (auto i2 : R2) {
                const Place& v2 = cands[i2].v;
                if (eq1 && v2 < (*tok)[2]) continue;
                const bool eq2 = eq1 && v2 == (*tok)[2];
                if (one[i0][i2] != 1 || one[i1][i2] != 0) continue;
                for (auto i3 : R3) {
                    const Place& v3 = cands[i3].v;
                    if (i3 == i0 || i3 == i1 || (eq2 && !((*tok)[3] < v3))) continue;
                    if (one[i2][i3] != 0) continue;
                    if (stop) return;
                    ++out.examined;
                    const PlaceArith* roles[4] = {&cands[i0], &cands[i1], &cands[i2], &cands[i3]};
                    Prop34Report rep = check_prop34(cl, roles);
                    if (!rep.verdict()) continue;
                    MildnessCertificate cert = certify_linking(build_linking_data(cl, roles));
                    if (spec.require_certified && cert.verdict != Verdict::mild_certified) continue;
                    cert.classgroup = cl;
                    std::vector<Place> S{v0, v1, v2, v3};
                    std::string token = make_token(S);
                    out.hits.push_back(SearchHit{std::move(S), std::move(cert), std::move(rep), std::move(token)});
                    if (cap && out.hits.size() >= cap) return;
                }
            }
        }
    };
    auto emit = [&](ShardOut& out) {
        result.tuples_examined += out.examined;
        for (auto& h : out.hits) {
            if (on_hit) on_hit(h);
            result.hits.push_back(std::move(h));
            if (cap && result.hits.size() >= cap) {
                result.resume_token = result.hits.back().token;
                return false;
            }
        }
        return true;
    };
    run_sharded(R0.size(), spec.threads, shard, emit);
    return result;
}

SearchResult find_theorem32_sets(const SearchSpec& spec, const HitCallback& on_hit) {
    if (spec.mode != SearchMode::theorem32) throw Error(ErrorKind::invalid_input, "find_theorem32_sets needs mode theorem32");
    if (spec.ell_bound < spec.p + 1) throw Error(ErrorKind::invalid_input, "bound must be at least p + 1");
    const std::size_t m = spec.cardinality;
    if (m < 4 || m % 2 != 0) throw Error(ErrorKind::cardinality, "cardinality must be even and at least 4");
    if (m > 10) throw Error(ErrorKind::unsupported, "ordering search is capped at |S| = 10");
    SearchResult result{search_class_group(spec.field, spec.p), {}, 0, 0, std::nullopt};
    const ClassGroupData& cl = result.classgroup;
    const std::vector<PlaceArith> cands = candidate_places(cl, spec.ell_bound, spec.threads);
    const std::size_t n = cands.size();
    result.candidates = n;

    std::optional<std::vector<Place>> tok;
    if (spec.checkpoint) {
        tok = parse_token(spec.field, *spec.checkpoint);
        if (tok->size() != m) throw Error(ErrorKind::invalid_input, "checkpoint size differs from the cardinality");
    }

    const std::size_t cap = spec.max_results;
    auto shard = [&](std::size_t first, ShardOut& out, const std::atomic<bool>& stop) {
        if (n < m || first > n - m) return;
        // combinations with smallest index `first`, in lexicographic order
        std::vector<std::size_t> idx(m);
        for (std::size_t j = 0; j < m; ++j) idx[j] = first + j;
        std::vector<Place> S(m);
        for (;;) {
            if (stop) return;
            for (std::size_t j = 0; j < m; ++j) S[j] = cands[idx[j]].v;
            if (!tok || tuple_less(*tok, S)) {
                ++out.examined;
                std::optional<std::size_t> v0;
                for (std::size_t j = 0; j < m && !v0; ++j)
                    if (!cands[idx[j]].a1_residue.is_one()) v0 = j;
                if (v0) {
                    std::vector<const PlaceArith*> ptrs{&cands[idx[*v0]]};
                    for (std::size_t j = 0; j < m; ++j)
                        if (j != *v0) ptrs.push_back(&cands[idx[j]]);
                    try {
                        MildnessCertificate cert = certify_linking(build_linking_data(cl, ptrs));
                        if (cert.verdict == Verdict::mild_certified) {
                            cert.classgroup = cl;
                            std::vector<Place> hitS;
                            for (auto* p : ptrs) hitS.push_back(p->v);
                            std::string token = make_token(S);
                            out.hits.push_back(SearchHit{std::move(hitS), std::move(cert), std::nullopt, std::move(token)});
                            if (cap && out.hits.size() >= cap) return;
                        }
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::invalid_place_set) throw;
                    }
                }
            }
            // next combination keeping idx[0] fixed
            std::size_t j = m;
            while (j > 1 && idx[j - 1] == n - m + j - 1) --j;
            if (j <= 1) return;
            ++idx[j - 1];
            for (std::size_t t = j; t < m; ++t) idx[t] = idx[t - 1] + 1;
        }
    };
    auto emit = [&](ShardOut& out) {
        result.tuples_examined += out.examined;
        for (auto& h : out.hits) {
            if (on_hit) on_hit(h);
            result.hits.push_back(std::move(h));
            if (cap && result.hits.size() >= cap) {
                result.resume_token = result.hits.back().token;
                return false;
            }
        }
        return true;
    };
    run_sharded(n, spec.threads, shard, emit);
    return result;
}

SearchResult run_search(const SearchSpec& spec, const HitCallback& on_hit) {
    return spec.mode == SearchMode::prop34 ? find_prop34_quadruples(spec, on_hit) : find_theorem32_sets(spec, on_hit);
}

}  // namespace mildcert
