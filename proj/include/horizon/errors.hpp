#pragma once

#include <stdexcept>
#include <string>

namespace horizon {

// Requested derivative order (or recursion depth) beyond what the inputs provide.
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// A second x-derivative vanished where a formula divides by it.
struct singularity_error : std::runtime_error {
    explicit singularity_error(const std::string& what) : std::runtime_error(what) {}
};

// A surrogate lost concavity in wealth where a portfolio is being formed.
struct concavity_error : std::runtime_error {
    explicit concavity_error(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite state encountered while stepping a path.
struct simulation_error : std::runtime_error {
    explicit simulation_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent experiment configuration.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace horizon
