#pragma once

#include <stdexcept>
#include <string>

namespace floerkit {

// Mismatched moduli/precisions, invalid matrices, broken contracts
// detected at construction time.
struct structural_error : std::runtime_error {
    explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside an operation's domain (bad coordinate range, wrong index, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Inversion of a series with positive valuation.
struct not_a_unit_error : domain_error {
    explicit not_a_unit_error(const std::string& what) : domain_error(what) {}
};

// Time-1 map has 1 as an eigenvalue (to tolerance).
struct degenerate_error : domain_error {
    explicit degenerate_error(const std::string& what) : domain_error(what) {}
};

// A numerical crossing could not be isolated after maximal grid refinement.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Interval layout requested on the boundary of the cube.
struct degenerate_layout_error : domain_error {
    explicit degenerate_layout_error(const std::string& what) : domain_error(what) {}
};

// A verified hypothesis of a construction failed; carries the name of the
// first failing identity.
struct contract_violation : std::runtime_error {
    explicit contract_violation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace floerkit
