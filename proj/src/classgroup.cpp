#include "mildcert/classgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "mildcert/error.hpp"

namespace mildcert {

bool QuadForm::is_reduced() const {
    Integer ab = abs(b);
    if (!(ab <= a && a <= c)) return false;
    if ((ab == a || a == c) && b < 0) return false;
    return true;
}

std::string QuadForm::str() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

namespace {

// b into (-a, a] keeping the discriminant.
void normalize(QuadForm& f) {
    Integer disc = f.discriminant();
    Integer two_a = 2 * f.a;
    Integer num = f.b - f.a;
    Integer k;
    mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), two_a.get_mpz_t());
    if (k != 0) {
        f.b -= two_a * k;
        f.c = (f.b * f.b - disc) / (4 * f.a);
    }
}

bool form_less(const QuadForm& x, const QuadForm& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
}

}  // namespace

QuadForm reduce_form(QuadForm f) {
    if (f.a <= 0 || f.discriminant() >= 0)
        throw Error(ErrorKind::invalid_input, "reduce_form needs a positive definite form, got " + f.str());
    normalize(f);
    while (f.a > f.c) {
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize(f);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    if (f.discriminant() != g.discriminant())
        throw Error(ErrorKind::invalid_input, "compose: discriminants differ");
    // Shanks' composition of primitive forms
    const QuadForm& f1 = f.a > g.a ? g : f;
    const QuadForm& f2 = f.a > g.a ? f : g;
    Integer s = (f1.b + f2.b) / 2;
    Integer n = f2.b - s;

    Integer y1, d;
    if (mpz_divisible_p(f2.a.get_mpz_t(), f1.a.get_mpz_t())) {
        y1 = 0;
        d = f1.a;
    } else {
        Integer v;
        mpz_gcdext(d.get_mpz_t(), y1.get_mpz_t(), v.get_mpz_t(), f2.a.get_mpz_t(), f1.a.get_mpz_t());
    }

    Integer x2, y2, d1;
    if (mpz_divisible_p(s.get_mpz_t(), d.get_mpz_t())) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Integer v;
        mpz_gcdext(d1.get_mpz_t(), x2.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
        y2 = -v;
    }

    Integer v1 = f1.a / d1;
    Integer v2 = f2.a / d1;
    Integer r0 = y1 * y2 * n - x2 * f2.c;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), r0.get_mpz_t(), v1.get_mpz_t());
    Integer b3 = f2.b + 2 * v2 * r;
    Integer a3 = v1 * v2;
    Integer c3 = (f2.c * d1 + r * (f2.b + v2 * r)) / v1;
    return reduce_form(QuadForm{a3, b3, c3});
}

QuadForm principal_form(const QuadField& k) {
    Integer disc(static_cast<long>(k.discriminant()));
    Integer b = k.omega_trace();
    return QuadForm{1, b, (b * b - disc) / 4};
}

QuadForm inverse_form(const QuadForm& f) { return reduce_form(QuadForm{f.a, -f.b, f.c}); }

QuadForm form_pow(const QuadForm& f, u64 e) {
    Integer disc = f.discriminant();
    Integer b = mpz_odd_p(disc.get_mpz_t()) ? 1 : 0;
    QuadForm result{1, b, (b * b - disc) / 4};
    QuadForm base = reduce_form(f);
    while (e > 0) {
        if (e & 1) result = compose(result, base);
        e >>= 1;
        if (e) base = compose(base, base);
    }
    return result;
}

u64 form_order(const QuadForm& f) {
    QuadForm base = reduce_form(f);
    QuadForm cur = base;
    u64 e = 1;
    while (cur.a != 1) {
        cur = compose(cur, base);
        ++e;
    }
    return e;
}

QuadForm ideal_to_form(const IntegralIdeal& ideal) {
    Integer a = ideal.norm_a();
    Integer b = -ideal.b_root();
    Integer disc(static_cast<long>(ideal.field().discriminant()));
    return reduce_form(QuadForm{a, b, (b * b - disc) / (4 * a)});
}

IntegralIdeal form_to_ideal(const QuadField& k, const QuadForm& f) {
    Integer disc(static_cast<long>(k.discriminant()));
    if (f.discriminant() != disc) throw Error(ErrorKind::invalid_input, "form_to_ideal: wrong discriminant");
    Integer b = -f.b;
    Integer two_a = 2 * f.a;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), two_a.get_mpz_t());
    return IntegralIdeal::standardized(k, f.a, r);
}

std::optional<u64> class_dlog(const QuadForm& target, const QuadForm& base) {
    QuadForm t = reduce_form(target);
    QuadForm g = reduce_form(base);
    Integer disc = g.discriminant();
    Integer b = mpz_odd_p(disc.get_mpz_t()) ? 1 : 0;
    QuadForm cur{1, b, (b * b - disc) / 4};
    u64 e = 0;
    do {
        if (cur == t) return e;
        cur = compose(cur, g);
        ++e;
    } while (cur.a != 1);
    return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<FieldElement> units(const QuadField& k) {
    std::vector<IntegralIdeal::Coords> coords = {{1, 0}, {-1, 0}};
    if (k.discriminant() == -4) {
        coords.push_back({0, 1});
        coords.push_back({0, -1});
    } else if (k.discriminant() == -3) {
        coords.push_back({0, 1});
        coords.push_back({0, -1});
        coords.push_back({-1, 1});
        coords.push_back({1, -1});
    }
    std::vector<FieldElement> out;
    for (const auto& [x, y] : coords) out.push_back(FieldElement::from_omega(k, x, y));
    return out;
}

FieldElement canonical_associate(const QuadField& k, const FieldElement& x) {
    std::optional<FieldElement> best;
    for (const auto& u : units(k)) {
        FieldElement y = x * u;
        if (!(y.a() > 0 || (y.a() == 0 && y.b() > 0))) continue;
        if (!best) {
            best = y;
            continue;
        }
        Rational yb(y.b(), y.den()), bb(best->b(), best->den());
        Rational ya(y.a(), y.den()), ba(best->a(), best->den());
        if (yb < bb || (yb == bb && ya < ba)) best = y;
    }
    if (!best) throw Error(ErrorKind::internal, "no canonical associate for " + x.str());
    return *best;
}

FieldElement principal_generator(const IntegralIdeal& ideal) {
    const QuadField& k = ideal.field();
    const Integer t = k.omega_trace();
    const Integer n = k.omega_norm();
    using V = IntegralIdeal::Coords;
    auto q = [&](const V& v) -> Integer { return v.first * v.first + t * v.first * v.second + n * v.second * v.second; };
    auto twice_bilinear = [&](const V& u, const V& v) -> Integer {
        return 2 * u.first * v.first + t * (u.first * v.second + v.first * u.second) + 2 * n * u.second * v.second;
    };

    // Lagrange-Gauss reduction of the Z-basis under the norm form
    V e1{ideal.hnf_a(), 0};
    V e2{ideal.hnf_b(), ideal.hnf_c()};
    if (q(e1) > q(e2)) std::swap(e1, e2);
    for (;;) {
        Integer mu = round_div(twice_bilinear(e1, e2), 2 * q(e1));
        e2.first -= mu * e1.first;
        e2.second -= mu * e1.second;
        if (q(e2) < q(e1)) std::swap(e1, e2);
        else break;
    }
    if (q(e1) != ideal.norm())
        throw Error(ErrorKind::not_principal, "ideal " + ideal.str() + " is not principal");
    return canonical_associate(k, FieldElement::from_omega(k, e1.first, e1.second));
}

FieldElement principal_generator(const IntegralIdeal& numerator, const Integer& denominator) {
    if (denominator <= 0) throw Error(ErrorKind::invalid_input, "fractional ideal denominator must be positive");
    return principal_generator(numerator) / denominator;
}

// ---------------------------------------------------------------------------

CayleyTable::CayleyTable(std::vector<QuadForm> forms) : forms_(std::move(forms)) {
    if (forms_.empty() || forms_.front().a != 1) throw Error(ErrorKind::internal, "table must start at the principal form");
    const std::size_t n = forms_.size();
    table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::size_t idx = index_of(compose(forms_[i], forms_[j]));
            table_[i * n + j] = idx;
            table_[j * n + i] = idx;
        }
}

std::size_t CayleyTable::index_of(const QuadForm& f) const {
    auto it = std::lower_bound(forms_.begin() + 1, forms_.end(), f, form_less);
    if (f.a == 1 && forms_.front() == f) return 0;
    if (it == forms_.end() || !(*it == f)) throw Error(ErrorKind::internal, "form " + f.str() + " not in table");
    return static_cast<std::size_t>(it - forms_.begin());
}

std::size_t CayleyTable::pow(std::size_t i, u64 e) const {
    std::size_t result = 0;
    std::size_t base = i;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

u64 CayleyTable::order(std::size_t i) const {
    u64 e = 1;
    for (std::size_t cur = i; cur != 0; cur = mul(cur, i)) ++e;
    return e;
}

unsigned CayleyTable::p_rank(u64 p) const {
    u64 torsion = 0;
    for (std::size_t i = 0; i < size(); ++i)
        if (pow(i, p) == 0) ++torsion;
    unsigned rank = 0;
    while (torsion > 1) {
        torsion /= p;
        ++rank;
    }
    return rank;
}

std::vector<QuadForm> reduced_forms(i64 discriminant) {
    if (discriminant >= 0 || ((discriminant % 4) + 4) % 4 > 1)
        throw Error(ErrorKind::invalid_input, "not a negative discriminant: " + std::to_string(discriminant));
    std::vector<QuadForm> out;
    const i64 absd = -discriminant;
    for (i64 a = 1; 3 * a * a <= absd; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b - discriminant;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            out.push_back(QuadForm{Integer(static_cast<long>(a)), Integer(static_cast<long>(b)),
                                   Integer(static_cast<long>(c))});
        }
    }
    std::sort(out.begin(), out.end(), form_less);
    return out;
}

ClassGroupData enumerate_class_group(const QuadField& k, u64 p) {
    if (p < 3 || !is_prime(p)) throw Error(ErrorKind::invalid_input, "p must be an odd prime, got " + std::to_string(p));
    if (p >= kMaxResidueChar) throw Error(ErrorKind::unsupported, "p exceeds the supported range");
    ClassGroupData cl{k, p, reduced_forms(k.discriminant()), 0, 0, 0, 0, std::nullopt};
    CayleyTable table(cl.forms);
    cl.class_number = cl.forms.size();
    cl.p_rank = table.p_rank(p);
    cl.h = cl.class_number;
    while (cl.h % p == 0) cl.h /= p;
    cl.p_part_order = cl.class_number / cl.h;
    return cl;
}

A1Data choose_a1(const QuadField& k, const ClassGroupData& cl, std::span<const Place> S) {
    if (cl.p_rank != 1)
        throw Error(ErrorKind::p_rank, "the " + std::to_string(cl.p) + "-rank of the class group is " +
                                           std::to_string(cl.p_rank) + ", not 1");
    CayleyTable table(cl.forms);
    std::set<std::size_t> pth_powers;
    for (std::size_t i = 0; i < table.size(); ++i) pth_powers.insert(table.pow(i, cl.p));
    std::set<u64> excluded;
    for (const auto& v : S) excluded.insert(v.ell);

    constexpr u64 kScanLimit = 10'000'000;
    for (u64 ell = 3; ell < kScanLimit; ell += 2) {
        if (!is_prime(ell) || excluded.count(ell)) continue;
        for (const auto& v : split_prime(k, ell)) {
            if (v.kind == SplitKind::inert) continue;
            IntegralIdeal ideal = IntegralIdeal::of_place(k, v);
            QuadForm f = ideal_to_form(ideal);
            std::size_t idx = table.index_of(f);
            if (pth_powers.count(idx)) continue;
            u64 q1 = table.order(idx);
            FieldElement gen = principal_generator(ideal.pow(q1));
            return A1Data{v, ideal, f, q1, gen};
        }
    }
    throw Error(ErrorKind::internal, "no prime generating Cl/p found below the scan limit");
}

ClassGroupData class_group_with_a1(const QuadField& k, u64 p, std::span<const Place> S) {
    ClassGroupData cl = enumerate_class_group(k, p);
    cl.a1 = choose_a1(k, cl, S);
    return cl;
}

PiData compute_pi(const Place& w, const ClassGroupData& cl) {
    if (!cl.a1) throw Error(ErrorKind::internal, "compute_pi needs a1");
    const A1Data& a1 = *cl.a1;
    if (w == a1.place) throw Error(ErrorKind::invalid_place_set, "w coincides with a1");
    const QuadField& k = cl.field;
    IntegralIdeal wh = IntegralIdeal::of_place(k, w).pow(cl.h);
    auto l = class_dlog(ideal_to_form(wh), a1.form);
    if (!l) throw Error(ErrorKind::internal, "[w]^h is not a power of [a1] for w = " + w.label());
    IntegralIdeal numerator = wh * a1.ideal.conj().pow(*l);
    Integer denominator;
    mpz_pow_ui(denominator.get_mpz_t(), a1.ideal.norm().get_mpz_t(), static_cast<unsigned long>(*l));
    return PiData{w, *l, principal_generator(numerator, denominator)};
}

}  // namespace mildcert
