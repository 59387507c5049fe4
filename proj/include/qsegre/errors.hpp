#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsegre {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- state construction ------------------------------------------------------

struct ZeroVectorError : Error {
    ZeroVectorError() : Error("amplitude vector is zero") {}
};

struct NotPowerOfTwoError : Error {
    explicit NotPowerOfTwoError(std::size_t len)
        : Error("amplitude count " + std::to_string(len) + " is not a power of two >= 2") {}
};

struct NotNormalizedError : Error {
    explicit NotNormalizedError(double norm)
        : Error("state norm " + std::to_string(norm) + " deviates from 1 beyond tolerance") {}
};

// -- operations on states ----------------------------------------------------

struct BadPauliIndexError : Error {
    using Error::Error;
};

struct ImaginaryResidueError : Error {
    explicit ImaginaryResidueError(double residue)
        : Error("expectation value has imaginary residue " + std::to_string(residue) +
                "; input state is numerically corrupted") {}
};

/// Cut index outside 1..n-1.
struct BadCutError : Error {
    BadCutError(int ell, int n)
        : Error("cut " + std::to_string(ell) + " out of range for " + std::to_string(n) +
                " qubits") {}
};

struct BadPermutationError : Error {
    using Error::Error;
};

struct BadEngineError : Error {
    using Error::Error;
};

// -- parser ------------------------------------------------------------------

/// Reported as "line:col expected <X> found <Y>".
struct ParseError : Error {
    std::size_t position; // character offset into the input
    std::size_t line;
    std::size_t column;
    std::string expected;
    std::string found;

    ParseError(std::size_t pos, std::size_t line_, std::size_t col, std::string expected_,
               std::string found_)
        : Error(std::to_string(line_) + ":" + std::to_string(col) + " expected " + expected_ +
                " found " + found_),
          position(pos), line(line_), column(col), expected(std::move(expected_)),
          found(std::move(found_)) {}
};

struct MixedArityError : Error {
    MixedArityError(int a, int b)
        : Error("mixed qubit counts in expression: " + std::to_string(a) + " vs " +
                std::to_string(b)) {}
};

struct ZeroStateError : Error {
    ZeroStateError() : Error("all amplitudes cancel; expression denotes the zero vector") {}
};

// -- geometry ----------------------------------------------------------------

struct ShapeMismatchError : Error {
    using Error::Error;
};

struct InconsistentCutsError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

} // namespace qsegre
