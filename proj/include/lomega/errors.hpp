#pragma once

#include <stdexcept>
#include <string>

namespace lomega {

// Failure categories; the CLI maps these onto its exit codes
// (validation -> 2, numerical -> 3, insufficient_data -> 4).
enum class ErrorKind { validation, numerical, insufficient_data };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(ErrorKind::validation, msg) {}
};

struct InvalidDisturbanceError : ValidationError {
    explicit InvalidDisturbanceError(const std::string& msg) : ValidationError(msg) {}
};

// ODE integration produced a non-finite state at time t.
struct IntegrationDivergedError : Error {
    IntegrationDivergedError(double t_fail, const std::string& msg)
        : Error(ErrorKind::numerical, msg), t(t_fail) {}
    double t;
};

// PDE stepping produced a non-finite value at time t, node index `node`.
struct SolverDivergedError : Error {
    SolverDivergedError(double t_fail, int node_index, const std::string& msg)
        : Error(ErrorKind::numerical, msg), t(t_fail), node(node_index) {}
    double t;
    int node;
};

// The solution reached the edge of the grid; the run no longer approximates
// an unbounded domain.
struct BoundaryContaminatedError : Error {
    BoundaryContaminatedError(double t_fail, int node_index, const std::string& msg)
        : Error(ErrorKind::numerical, msg), t(t_fail), node(node_index) {}
    double t;
    int node;
};

struct ProfileDivergedError : Error {
    ProfileDivergedError(double z_fail, const std::string& msg)
        : Error(ErrorKind::numerical, msg), z(z_fail) {}
    double z;
};

// No node exceeds the front threshold: the pattern has not formed yet.
struct NoFrontError : Error {
    explicit NoFrontError(const std::string& msg) : Error(ErrorKind::insufficient_data, msg) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& msg)
        : Error(ErrorKind::insufficient_data, msg) {}
};

struct InvalidInsetError : Error {
    explicit InvalidInsetError(const std::string& msg)
        : Error(ErrorKind::insufficient_data, msg) {}
};

}  // namespace lomega
