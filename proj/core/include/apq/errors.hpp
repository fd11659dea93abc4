#pragma once

#include <stdexcept>
#include <string>

namespace apq {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point falls outside the region covered by a partition, or a value
/// escapes its admissible range.
class OutOfRange : public Error {
public:
    using Error::Error;
};

/// Two aligned containers disagree in length.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// An operation needs more points than the sequence provides.
class TooFewPoints : public Error {
public:
    using Error::Error;
};

/// The sequence has separation constant zero.
class NotSeparated : public Error {
public:
    using Error::Error;
};

/// Lattice parameters produce near-colliding points.
class TooDense : public Error {
public:
    using Error::Error;
};

/// An iteration exhausted its step budget without meeting its tolerance.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The series certificate failed its tail-decay check; the exponent is too
/// small for the given sequence and data.
class SummabilityFailure : public Error {
public:
    using Error::Error;
};

/// The correction iteration failed to contract for several steps in a row.
class NoContraction : public Error {
public:
    using Error::Error;
};

/// The interpolation constraint matrix lost row rank (too many points for
/// the basis, or colliding points).
class RankDeficient : public Error {
public:
    using Error::Error;
};

/// The admissible exponent window of the Schur test is empty.
class InfeasibleWindow : public Error {
public:
    using Error::Error;
};

/// A parameter violates the stated range of an inequality or estimator.
class ParameterViolation : public Error {
public:
    using Error::Error;
};

/// A schedule of radii or degrees is empty.
class EmptySchedule : public Error {
public:
    using Error::Error;
};

} // namespace apq
