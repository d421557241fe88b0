#pragma once

#include <stdexcept>
#include <string>

namespace ccnb {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument to a pure computation (n out of range, bad permutation, ...).
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

// Two bodies coincide, or a configuration otherwise collapsed.
class degenerate_configuration_error : public error {
public:
    explicit degenerate_configuration_error(const std::string& what) : error(what) {}
};

// An odd non-collinear count: a mirror partner is missing from a census.
class parity_error : public error {
public:
    explicit parity_error(const std::string& what) : error(what) {}
};

// A spectral routine was handed a configuration that is not a polished
// critical point.
class not_critical_error : public error {
public:
    explicit not_critical_error(const std::string& what) : error(what) {}
};

// relabel() with a permutation that does not preserve the mass vector.
class incompatible_relabel_error : public error {
public:
    explicit incompatible_relabel_error(const std::string& what) : error(what) {}
};

// Malformed input file (verify / census_from_json).
class schema_error : public error {
public:
    explicit schema_error(const std::string& what) : error(what) {}
};

} // namespace ccnb
