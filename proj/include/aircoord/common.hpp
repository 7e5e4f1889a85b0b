#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace aircoord {

/// Domain/model evaluation error (bad arguments to a primitive).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// The model is well formed but has no feasible solution here
/// (concavity violated, reservation profit unattainable, q <= 0, ...).
class InfeasibleError : public ModelError {
public:
    explicit InfeasibleError(const std::string& what) : ModelError(what) {}
};

/// Numeric solver failed (bracket exhaustion, non-contraction, singular system).
class SolverError : public ModelError {
public:
    explicit SolverError(const std::string& what) : ModelError(what) {}
};

/// Config file problem; carries a "file:line:" anchored message.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Structure { cent, dcent, csc, rsc, ltt };

inline const char* to_string(Structure s) {
    switch (s) {
        case Structure::cent: return "CENT";
        case Structure::dcent: return "D-CENT";
        case Structure::csc: return "CSC";
        case Structure::rsc: return "RSC";
        case Structure::ltt: return "LTT";
    }
    return "?";
}

/// Which computational path produced an equilibrium.
enum class Method { closed_form, numeric };

inline const char* to_string(Method m) {
    return m == Method::closed_form ? "closed-form" : "numeric";
}

inline bool nearly_equal(double a, double b, double rel = 1e-9, double abs_tol = 1e-12) {
    return std::abs(a - b) <= std::max(abs_tol, rel * std::max(std::abs(a), std::abs(b)));
}

} // namespace aircoord
