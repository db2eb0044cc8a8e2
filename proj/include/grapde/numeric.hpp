#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace grapde {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad files, invalid graphs, violated preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

/// Numerical evaluation left the domain of an expression (log of a negative, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A certificate or construction could not be established numerically.
class CertificationError : public Error {
public:
    using Error::Error;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// |x|^{e}, with the continuous extension 0^{e} = 0 for e > 0 and 0^0 = 1.
inline double abs_pow(double x, double e)
{
    if (e == 0.0) {
        return 1.0;
    }
    const double a = std::abs(x);
    if (a == 0.0) {
        return 0.0;
    }
    if (e == 1.0) {
        return a;
    }
    if (e == 2.0) {
        return a * a;
    }
    return std::pow(a, e);
}

/// |x|^{s-2} x, defined as 0 at x = 0 for every s >= 2.
inline double signed_pow(double x, double s)
{
    return abs_pow(x, s - 2.0) * x;
}

inline bool approx_equal(double a, double b, double rel, double abs_tol = 0.0)
{
    return std::abs(a - b) <= std::max(abs_tol, rel * std::max(std::abs(a), std::abs(b)));
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace grapde
