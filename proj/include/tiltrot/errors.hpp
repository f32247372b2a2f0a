#pragma once

#include <stdexcept>
#include <string>

namespace tiltrot {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// Quaternion norm too small to define a rotation (< 1e-12).
class DegenerateQuaternionError : public Error {
public:
    using Error::Error;
};

// Matrix is not orthonormal with determinant +1 within tolerance.
class InvalidRotationError : public Error {
public:
    using Error::Error;
};

// Fused angles violate the sine sum criterion sin^2(theta) + sin^2(phi) <= 1.
class InvalidFusedAnglesError : public Error {
public:
    using Error::Error;
};

class InvalidZVectorError : public Error {
public:
    using Error::Error;
};

// Argument expected to be a pure tilt rotation is not.
class InvalidTiltError : public Error {
public:
    using Error::Error;
};

// Referenced rotations with incompatible frame tags were combined.
class FrameMismatchError : public Error {
public:
    using Error::Error;
};

class InvalidKeyframesError : public Error {
public:
    using Error::Error;
};

class OutOfRangeError : public Error {
public:
    using Error::Error;
};

// Request falls on the fused yaw singularity (tilt angle alpha = pi).
class YawSingularityError : public Error {
public:
    using Error::Error;
};

// Tilt axis angle rate is undefined at alpha = 0. The rates that remain
// well defined there are carried along so callers can still use them.
class TiltAxisSingularityError : public Error {
public:
    TiltAxisSingularityError(const std::string& what, double dpsi, double dalpha)
        : Error(what), dpsi(dpsi), dalpha(dalpha) {}

    double dpsi;
    double dalpha;
};

// Mismatched yaw/tilt composition has no solution; `attainable_yaw` is the
// fused yaw every candidate rotation would have.
class NoSolutionError : public Error {
public:
    NoSolutionError(const std::string& what, double attainable_yaw)
        : Error(what), attainable_yaw(attainable_yaw) {}

    double attainable_yaw;
};

}  // namespace tiltrot
