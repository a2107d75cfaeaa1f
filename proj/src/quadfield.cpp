#include "mildcert/quadfield.hpp"

#include <algorithm>
#include <sstream>

#include "mildcert/error.hpp"

namespace mildcert {

QuadField QuadField::make(i64 d) {
    if (d >= 0) throw Error(ErrorKind::invalid_input, "radicand must be negative, got " + std::to_string(d));
    // a fundamental discriminant 4m (m = 2, 3 mod 4) names the same field as m
    if (!is_squarefree(d) && d % 4 == 0 && is_squarefree(d / 4) && ((d / 4) % 4 + 4) % 4 >= 2) d /= 4;
    if (!is_squarefree(d)) throw Error(ErrorKind::invalid_input, "radicand must be squarefree, got " + std::to_string(d));
    i64 m4 = ((d % 4) + 4) % 4;
    return QuadField(d, m4 == 1 ? d : 4 * d);
}

Integer QuadField::omega_norm() const {
    // N((1+sqrt d)/2) = (1-d)/4, N(sqrt d) = -d
    return omega_is_half() ? Integer((1 - d_) / 4) : Integer(-d_);
}

QuadField make_field(i64 d) { return QuadField::make(d); }

// ---------------------------------------------------------------------------

FieldElement::FieldElement(i64 d, Integer a, Integer b, Integer den)
    : d_(d), a_(std::move(a)), b_(std::move(b)), den_(std::move(den)) {
    canonicalize();
}

void FieldElement::canonicalize() {
    if (den_ == 0) throw Error(ErrorKind::invalid_input, "field element with zero denominator");
    if (den_ < 0) {
        a_ = -a_;
        b_ = -b_;
        den_ = -den_;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        den_ /= g;
    }
}

FieldElement FieldElement::from_omega(const QuadField& k, const Integer& x, const Integer& y) {
    if (k.omega_is_half()) return FieldElement(k.radicand(), 2 * x + y, y, 2);
    return FieldElement(k.radicand(), x, y, 1);
}

Rational FieldElement::norm() const {
    Rational r(a_ * a_ - Integer(d_) * b_ * b_, den_ * den_);
    r.canonicalize();
    return r;
}

Rational FieldElement::trace() const {
    Rational r(2 * a_, den_);
    r.canonicalize();
    return r;
}

FieldElement FieldElement::conj() const { return FieldElement(d_, a_, -b_, den_); }

bool FieldElement::is_integral() const {
    if (den_ == 1) return true;
    i64 m4 = ((d_ % 4) + 4) % 4;
    return den_ == 2 && m4 == 1 && mpz_odd_p(a_.get_mpz_t()) && mpz_odd_p(b_.get_mpz_t());
}

std::pair<Integer, Integer> FieldElement::omega_coords() const {
    if (!is_integral()) throw Error(ErrorKind::invalid_input, "omega_coords of a non-integral element " + str());
    i64 m4 = ((d_ % 4) + 4) % 4;
    if (m4 != 1) return {a_, b_};
    if (den_ == 1) return {a_ - b_, 2 * b_};
    return {(a_ - b_) / 2, b_};
}

FieldElement FieldElement::operator-() const { return FieldElement(d_, -a_, -b_, den_); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return FieldElement(d_, a_ * o.den_ + o.a_ * den_, b_ * o.den_ + o.b_ * den_, den_ * o.den_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (d_ != o.d_) throw Error(ErrorKind::invalid_input, "elements of different fields");
    return FieldElement(d_, a_ * o.a_ + Integer(d_) * b_ * o.b_, a_ * o.b_ + b_ * o.a_, den_ * o.den_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    if (o.is_zero()) throw Error(ErrorKind::invalid_input, "division by zero element");
    Rational n = o.norm();
    return (*this * o.conj()) * n.get_den() / n.get_num();
}

FieldElement FieldElement::operator*(const Integer& m) const { return FieldElement(d_, a_ * m, b_ * m, den_); }

FieldElement FieldElement::operator/(const Integer& m) const {
    if (m == 0) throw Error(ErrorKind::invalid_input, "division by zero");
    return FieldElement(d_, a_, b_, den_ * m);
}

std::string FieldElement::str() const {
    std::ostringstream os;
    const std::string root = "sqrt(" + std::to_string(d_) + ")";
    std::ostringstream num;
    if (b_ == 0) {
        num << a_;
    } else {
        if (a_ != 0) num << a_ << (b_ > 0 ? "+" : "-");
        else if (b_ < 0) num << "-";
        Integer ab = abs(b_);
        if (ab != 1) num << ab << "*";
        num << root;
    }
    if (den_ == 1) return num.str();
    bool compound = b_ != 0 && a_ != 0;
    os << (compound ? "(" : "") << num.str() << (compound ? ")" : "") << "/" << den_;
    return os.str();
}

FieldElement elem_mul(const FieldElement& x, const FieldElement& y) { return x * y; }
Rational elem_norm(const FieldElement& x) { return x.norm(); }
FieldElement elem_conj(const FieldElement& x) { return x.conj(); }

// ---------------------------------------------------------------------------

std::string_view to_string(SplitKind kind) {
    switch (kind) {
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
    }
    return "?";
}

std::string Place::label() const {
    if (kind == SplitKind::inert) return std::to_string(ell);
    return std::to_string(ell) + ":" + std::to_string(root);
}

namespace {

u64 omega_image(const QuadField& k, u64 ell, u64 sqrt_d) {
    if (!k.omega_is_half()) return sqrt_d % ell;
    return mul_mod((1 + sqrt_d) % ell, inv_mod(2, ell), ell);
}

void check_ell(u64 ell) {
    if (!is_prime(ell)) throw Error(ErrorKind::invalid_input, std::to_string(ell) + " is not prime");
    if (ell >= kMaxResidueChar)
        throw Error(ErrorKind::unsupported, "prime " + std::to_string(ell) + " exceeds the supported range");
}

std::vector<Place> split_two(const QuadField& k) {
    const i64 disc = k.discriminant();
    if (disc % 2 == 0) {
        // omega = sqrt d, omega^2 = d: ramified, omega = d mod 2
        u64 t = mod_u64(k.radicand(), 2);
        return {Place{2, SplitKind::ramified, t, t}};
    }
    if (mod_u64(disc, 8) == 5) return {Place{2, SplitKind::inert, 0, 0}};
    return {Place{2, SplitKind::split, 0, 0}, Place{2, SplitKind::split, 1, 1}};
}

}  // namespace

std::vector<Place> split_prime(const QuadField& k, u64 ell) {
    check_ell(ell);
    if (ell == 2) return split_two(k);
    const Integer disc(static_cast<long>(k.discriminant()));
    switch (kronecker(disc, ell)) {
    case 0:
        return {Place{ell, SplitKind::ramified, 0, omega_image(k, ell, 0)}};
    case -1:
        return {Place{ell, SplitKind::inert, 0, 0}};
    default: {
        u64 r = *sqrt_mod(mod_u64(k.radicand(), ell), ell);
        u64 r2 = ell - r;
        if (r2 < r) std::swap(r, r2);
        return {Place{ell, SplitKind::split, r, omega_image(k, ell, r)},
                Place{ell, SplitKind::split, r2, omega_image(k, ell, r2)}};
    }
    }
}

Place make_place(const QuadField& k, u64 ell, std::optional<u64> root) {
    auto places = split_prime(k, ell);
    if (!root) {
        if (places.size() != 1)
            throw Error(ErrorKind::invalid_input,
                        std::to_string(ell) + " splits; name one place as " + std::to_string(ell) + ":root");
        return places.front();
    }
    if (places.front().kind == SplitKind::inert)
        throw Error(ErrorKind::invalid_input, std::to_string(ell) + " is inert; it has no root");
    u64 r = *root % ell;
    for (const auto& v : places)
        if (v.root == r) return v;
    throw Error(ErrorKind::invalid_input, std::to_string(*root) + " is not a square root of " +
                                              std::to_string(k.radicand()) + " mod " + std::to_string(ell));
}

// ---------------------------------------------------------------------------

ResidueField::ResidueField(const QuadField& k, const Place& v) : place_(v), ell_(v.ell) {
    if (ell_ == 2) throw Error(ErrorKind::unsupported, "residue fields of places above 2 are not supported");
    if (ell_ >= kMaxResidueChar) throw Error(ErrorKind::unsupported, "residue characteristic too large");
    disc_mod_ = mod_u64(k.discriminant(), ell_);
    if (v.kind == SplitKind::inert) {
        // s^2 = D; sqrt d = s when D = d, s/2 when D = 4d
        sqrt_d_image_ = k.omega_is_half() ? 1 : inv_mod(2, ell_);
    } else {
        sqrt_d_image_ = v.root % ell_;
    }
}

ResidueElement ResidueField::make(u64 c0, u64 c1) const {
    return {c0 % ell_, degree() == 2 ? c1 % ell_ : 0};
}

ResidueElement ResidueField::add(const ResidueElement& x, const ResidueElement& y) const {
    return {add_mod(x.c0, y.c0, ell_), add_mod(x.c1, y.c1, ell_)};
}

ResidueElement ResidueField::mul(const ResidueElement& x, const ResidueElement& y) const {
    if (degree() == 1) return {mul_mod(x.c0, y.c0, ell_), 0};
    u64 c0 = add_mod(mul_mod(x.c0, y.c0, ell_), mul_mod(mul_mod(x.c1, y.c1, ell_), disc_mod_, ell_), ell_);
    u64 c1 = add_mod(mul_mod(x.c0, y.c1, ell_), mul_mod(x.c1, y.c0, ell_), ell_);
    return {c0, c1};
}

ResidueElement ResidueField::pow(ResidueElement x, u64 e) const {
    ResidueElement result = one();
    while (e > 0) {
        if (e & 1) result = mul(result, x);
        x = mul(x, x);
        e >>= 1;
    }
    return result;
}

ResidueElement ResidueField::pow(const ResidueElement& x, const Integer& e) const {
    if (e < 0) throw Error(ErrorKind::invalid_input, "negative exponent");
    ResidueElement result = one();
    for (auto i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        result = mul(result, result);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) result = mul(result, x);
    }
    return result;
}

ResidueElement ResidueField::frobenius(const ResidueElement& x) const {
    return {x.c0, x.c1 == 0 ? 0 : ell_ - x.c1};
}

ResidueElement ResidueField::reduce(const FieldElement& x) const {
    u64 den = mod_u64(x.den(), ell_);
    if (den == 0)
        throw Error(ErrorKind::invalid_input,
                    x.str() + " has " + std::to_string(ell_) + " in its denominator");
    u64 dinv = inv_mod(den, ell_);
    u64 a = mul_mod(mod_u64(x.a(), ell_), dinv, ell_);
    u64 b = mul_mod(mod_u64(x.b(), ell_), dinv, ell_);
    if (degree() == 1) return {add_mod(a, mul_mod(b, sqrt_d_image_, ell_), ell_), 0};
    return {a, mul_mod(b, sqrt_d_image_, ell_)};
}

ResidueElement reduce_mod_place(const QuadField& k, const FieldElement& x, const Place& v) {
    return ResidueField(k, v).reduce(x);
}

ResidueElement residue_pow(const ResidueField& field, const ResidueElement& r, u64 e) {
    return field.pow(r, e);
}

std::string to_string(const ResidueElement& r, const ResidueField& field) {
    if (field.degree() == 1 || r.c1 == 0) return std::to_string(r.c0);
    return std::to_string(r.c0) + "+" + std::to_string(r.c1) + "s";
}

}  // namespace mildcert
