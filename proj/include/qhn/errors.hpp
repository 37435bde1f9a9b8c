// Copyright (c) 2026 the qhn authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qhn {

/// Base class for all qhn errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// modmath
struct NotPrime : Error {
    using Error::Error;
};
struct ZeroInverse : Error {
    using Error::Error;
};
struct ModulusMismatch : Error {
    using Error::Error;
};

// quasigroup
struct NotLatinSquare : Error {
    using Error::Error;
};
struct OutOfAlphabet : Error {
    using Error::Error;
};

// transforms
struct DegenerateOrder : Error {
    using Error::Error;
};
struct BlockSizeMismatch : Error {
    using Error::Error;
};
struct NoSuchRoot : Error {
    using Error::Error;
};
struct UnsupportedFastOrder : Error {
    using Error::Error;
};

// pipeline
struct InvalidConfig : Error {
    using Error::Error;
};
struct LengthNotAligned : Error {
    using Error::Error;
};

// randomness
struct EmptySequence : Error {
    using Error::Error;
};
struct PeriodTooShort : Error {
    using Error::Error;
};
struct BlockTooLarge : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};

// sources
struct BadSeed : Error {
    using Error::Error;
};
struct BadPrime : Error {
    using Error::Error;
};

// file I/O
struct IoError : Error {
    using Error::Error;
};
struct FormatError : Error {
    using Error::Error;
};

}  // namespace qhn
