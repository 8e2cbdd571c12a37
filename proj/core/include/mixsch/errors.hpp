#pragma once

#include <stdexcept>
#include <string>

namespace mixsch {

/// The fiber t -> J(t p) has no interior maximum (A2 = A3 = kappa A4 = 0).
class NoProjection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A non-finite energy or gradient appeared during descent.
class Diverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// None of the multistart runs converged.
class AllFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A kappa scan gives no energy at or above the threshold to bisect against.
class NotBracketed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Pohozaev identities need s1 = s2 and alpha + beta = 2_s.
class RegimeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace mixsch
