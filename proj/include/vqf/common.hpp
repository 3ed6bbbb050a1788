#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vqf {

// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// encoding
class EvenInput : public Error {
public:
    using Error::Error;
};
class TooSmall : public Error {
public:
    using Error::Error;
};
class InvalidPrior : public Error {
public:
    using Error::Error;
};

// preprocess
class Infeasible : public Error {
public:
    using Error::Error;
};
class NonBinarySubstitution : public Error {
public:
    using Error::Error;
};

// hamiltonian
class TooManyQubits : public Error {
public:
    using Error::Error;
};

// Thrown by quantize() when preprocessing fixed every variable; carries the factors.
class AlreadySolved : public Error {
public:
    AlreadySolved(std::uint64_t p, std::uint64_t q)
        : Error("instance fully solved during preprocessing: " + std::to_string(p) + " * " +
                std::to_string(q)),
          p(p), q(q) {}
    std::uint64_t p;
    std::uint64_t q;
};

// simulator
class LengthMismatch : public Error {
public:
    using Error::Error;
};
class SizeMismatch : public Error {
public:
    using Error::Error;
};
class WrongKind : public Error {
public:
    using Error::Error;
};
class BadShape : public Error {
public:
    using Error::Error;
};

// optimizer
class NonFiniteValue : public Error {
public:
    using Error::Error;
};
class EmptyInput : public Error {
public:
    using Error::Error;
};

// analysis / resources
class NotBiprime : public Error {
public:
    using Error::Error;
};
class DegenerateFit : public Error {
public:
    using Error::Error;
};

// Small counter-style PRNG (splitmix64). Used wherever reproducibility across
// runs and platforms matters; std::mt19937 stays out of any output-affecting path.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform double in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Derives an independent stream seed from a base seed and a stream index.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    SplitMix64 g(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    g.next();
    return g.next();
}

} // namespace vqf
