#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace capture {

// Base for every numerical failure raised by the library. Invalid arguments
// are reported with std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SeriesNotConverged : public NumericalError {
public:
    SeriesNotConverged(double partial_sum, int terms)
        : NumericalError("hypergeometric series did not converge after " +
                         std::to_string(terms) + " terms"),
          partial_sum_(partial_sum), terms_(terms) {}

    double partial_sum() const noexcept { return partial_sum_; }
    int terms() const noexcept { return terms_; }

private:
    double partial_sum_;
    int terms_;
};

// One sample of a sign scan: (abscissa, function value).
using ScanTrace = std::vector<std::pair<double, double>>;

class NoSignChange : public NumericalError {
public:
    NoSignChange(const std::string& what, ScanTrace trace)
        : NumericalError(what), trace_(std::move(trace)) {}

    const ScanTrace& trace() const noexcept { return trace_; }

private:
    ScanTrace trace_;
};

class NotConverged : public NumericalError {
public:
    NotConverged(const std::string& what, int iterations)
        : NumericalError(what), iterations_(iterations) {}

    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

class InsufficientTailData : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace capture
