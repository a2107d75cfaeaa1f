#include "mildcert/ideal.hpp"

#include <sstream>

#include "mildcert/error.hpp"

namespace mildcert {

IntegralIdeal::Coords omega_mul(const QuadField& k, const IntegralIdeal::Coords& x,
                                const IntegralIdeal::Coords& y) {
    // omega^2 = t*omega - n
    const Integer t = k.omega_trace();
    const Integer n = k.omega_norm();
    const auto& [x1, y1] = x;
    const auto& [x2, y2] = y;
    Integer yy = y1 * y2;
    return {x1 * x2 - n * yy, x1 * y2 + x2 * y1 + t * yy};
}

IntegralIdeal IntegralIdeal::from_generators(const QuadField& k, const std::vector<Coords>& z_gens) {
    Integer a = 0;
    Coords pivot{0, 0};
    for (const auto& g : z_gens) {
        if (g.second == 0) {
            mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), g.first.get_mpz_t());
            continue;
        }
        if (pivot.second == 0) {
            pivot = g;
            continue;
        }
        Integer s, t, g0;
        mpz_gcdext(g0.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pivot.second.get_mpz_t(), g.second.get_mpz_t());
        Coords merged{s * pivot.first + t * g.first, g0};
        // this combination has zero omega-coordinate
        Integer residue_x = (g.second / g0) * pivot.first - (pivot.second / g0) * g.first;
        mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), residue_x.get_mpz_t());
        pivot = merged;
    }
    if (pivot.second < 0) {
        pivot.first = -pivot.first;
        pivot.second = -pivot.second;
    }
    if (a == 0 || pivot.second == 0) throw Error(ErrorKind::invalid_input, "generators do not span a full-rank ideal");
    Integer b;
    mpz_fdiv_r(b.get_mpz_t(), pivot.first.get_mpz_t(), a.get_mpz_t());
    return IntegralIdeal(k, a, b, pivot.second);
}

IntegralIdeal IntegralIdeal::principal(const QuadField& k, const FieldElement& x) {
    if (x.is_zero()) throw Error(ErrorKind::invalid_input, "zero ideal");
    if (x.radicand() != k.radicand()) throw Error(ErrorKind::invalid_input, "element of another field");
    Coords c = x.omega_coords();
    return from_generators(k, {c, omega_mul(k, c, {0, 1})});
}

IntegralIdeal IntegralIdeal::of_place(const QuadField& k, const Place& v) {
    Integer ell(static_cast<unsigned long>(v.ell));
    if (v.kind == SplitKind::inert) return IntegralIdeal(k, ell, 0, ell);
    // ell*O + (omega - t)*O
    return from_generators(k, {{ell, 0}, {0, ell}, {-Integer(static_cast<unsigned long>(v.omega_root)), 1},
                               omega_mul(k, {-Integer(static_cast<unsigned long>(v.omega_root)), 1}, {0, 1})});
}

IntegralIdeal IntegralIdeal::unit(const QuadField& k) { return IntegralIdeal(k, 1, 0, 1); }

IntegralIdeal IntegralIdeal::standardized(const QuadField& k, const Integer& norm_a, const Integer& b_root,
                                          const Integer& m) {
    Integer disc(static_cast<long>(k.discriminant()));
    if (norm_a <= 0 || m <= 0) throw Error(ErrorKind::invalid_input, "ideal norm and scalar must be positive");
    Integer rem;
    Integer diff = b_root * b_root - disc;
    Integer four_a = 4 * norm_a;
    mpz_fdiv_r(rem.get_mpz_t(), diff.get_mpz_t(), four_a.get_mpz_t());
    if (rem != 0) throw Error(ErrorKind::invalid_input, "b_root^2 is not D mod 4*norm_a");
    // (b + sqrt D)/2 = (b - delta)/2 + omega
    Integer shift = (b_root - k.omega_trace()) / 2;
    return from_generators(k, {{norm_a * m, 0}, {shift * m, m}, omega_mul(k, {shift * m, m}, {0, 1}),
                               {0, norm_a * m}});
}

Integer IntegralIdeal::b_root() const {
    Integer na = norm_a();
    Integer b = 2 * (b_ / c_) + k_.omega_trace();
    Integer two_a = 2 * na;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), two_a.get_mpz_t());
    return r;
}

std::pair<FieldElement, FieldElement> IntegralIdeal::basis() const {
    return {FieldElement::from_omega(k_, a_, 0), FieldElement::from_omega(k_, b_, c_)};
}

bool IntegralIdeal::contains(const FieldElement& x) const {
    if (x.radicand() != k_.radicand() || !x.is_integral()) return false;
    auto [u, v] = x.omega_coords();
    if (!mpz_divisible_p(v.get_mpz_t(), c_.get_mpz_t())) return false;
    Integer rest = u - (v / c_) * b_;
    return mpz_divisible_p(rest.get_mpz_t(), a_.get_mpz_t()) != 0;
}

IntegralIdeal IntegralIdeal::conj() const {
    // conj(x + y*omega) = (x + t*y) - y*omega
    const Integer t = k_.omega_trace();
    Coords g1{a_, 0};
    Coords g2{b_ + t * c_, -c_};
    return from_generators(k_, {g1, g2});
}

IntegralIdeal IntegralIdeal::operator*(const IntegralIdeal& o) const {
    if (!(k_ == o.k_)) throw Error(ErrorKind::invalid_input, "ideals of different fields");
    const Coords mine[2] = {{a_, 0}, {b_, c_}};
    const Coords theirs[2] = {{o.a_, 0}, {o.b_, o.c_}};
    std::vector<Coords> gens;
    gens.reserve(4);
    for (const auto& x : mine)
        for (const auto& y : theirs) gens.push_back(omega_mul(k_, x, y));
    return from_generators(k_, gens);
}

IntegralIdeal IntegralIdeal::operator*(const Integer& m) const {
    if (m <= 0) throw Error(ErrorKind::invalid_input, "ideal scalar must be positive");
    return IntegralIdeal(k_, a_ * m, b_ * m, c_ * m);
}

IntegralIdeal IntegralIdeal::pow(u64 e) const {
    IntegralIdeal result = unit(k_);
    IntegralIdeal base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::string IntegralIdeal::str() const {
    std::ostringstream os;
    if (c_ != 1) os << c_ << "*";
    os << "(" << norm_a() << ", (" << b_root() << "+sqrt(" << k_.discriminant() << "))/2)";
    return os.str();
}

}  // namespace mildcert
