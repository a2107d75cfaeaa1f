#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mildcert {

enum class ErrorKind {
    invalid_input,      // malformed number, non-prime, bad place spec
    p_rank,             // p-rank of Cl_k is not one
    no_singular_place,  // S is not singular at any of its places
    cardinality,        // |S| odd, < 4, or != 4 where required
    invalid_place_set,  // norms not 1 mod p, p-adic or ramified places, repeats
    not_principal,      // generator requested for a non-principal ideal
    unsupported,        // outside the implemented range (ell = 2 in S, huge ell)
    internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mildcert
