#pragma once

#include <stdexcept>
#include <string>

namespace fhd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct InsufficientNeighborhood : Error {
    using Error::Error;
};

struct IllConditioned : Error {
    using Error::Error;
};

struct DegenerateField : Error {
    using Error::Error;
};

struct MismatchedFields : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct InvalidMach : Error {
    using Error::Error;
};

struct StabilityViolation : Error {
    using Error::Error;
};

// Integration failure: non-positive density/temperature or non-finite state.
struct StateBlowup : Error {
    long step;
    long particle;
    StateBlowup(const std::string& msg, long step_, long particle_)
        : Error(msg), step(step_), particle(particle_) {}
};

}  // namespace fhd
