#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leadernet {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A record or artifact line could not be parsed.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A centrality metric failed; carries the metric name so callers know which one.
class MetricError : public Error {
public:
    MetricError(std::string metric, const std::string &what)
        : Error(metric + ": " + what), metric_(std::move(metric)) {}

    const std::string &metric() const noexcept { return metric_; }

private:
    std::string metric_;
};

/// Power iteration ran out of iterations.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string &what, double residual)
        : Error(what + " (last change " + std::to_string(residual) + ")"), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace leadernet
