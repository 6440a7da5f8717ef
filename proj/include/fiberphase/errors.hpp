#pragma once

#include <stdexcept>
#include <string>

namespace fiberphase {

// Invalid user input: malformed geometry, bad config values, occupation out
// of range, non-monotone time maps.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Query outside the valid domain (e.g. sampling a trajectory outside its
// time range).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a documented resource limit (Fock truncation too large).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A build-time or run-time numerical self-check failed.
class numerics_error : public std::runtime_error {
public:
    explicit numerics_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fiberphase
