#pragma once

#include <stdexcept>
#include <string>

namespace embedmap {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument values, dimension mismatches, broken invariants.
struct ValidationError : Error {
    using Error::Error;
};

// Sphere-map lookup at the singular direction (0,0,-1).
struct SingularityError : Error {
    using Error::Error;
};

// Texture coordinate outside the parameterization's valid domain.
struct DomainError : Error {
    using Error::Error;
};

// Point at or behind the camera plane during projection.
struct BehindCameraError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace embedmap
