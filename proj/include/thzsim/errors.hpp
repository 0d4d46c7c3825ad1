#pragma once

#include <stdexcept>
#include <string>

namespace thzsim {

/// Invalid domain value or violated invariant; the message names the field.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input document. line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// A numerical routine missed its error contract; carries the best estimate
/// and the tolerance it actually reached.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double best_estimate, double achieved_rel_tol)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          achieved_rel_tol_(achieved_rel_tol) {}

    double best_estimate() const { return best_estimate_; }
    double achieved_rel_tol() const { return achieved_rel_tol_; }

private:
    double best_estimate_;
    double achieved_rel_tol_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace thzsim
