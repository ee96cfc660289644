// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_CORE_ERROR_HPP
#define LARCH_CORE_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace larch {


/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};


/// Invalid construction parameters (bad warp size, zero workers, ...).
class ConfigurationError : public Error {
public:
    using Error::Error;
};


/// An allocation request exceeded the owning executor's arena capacity.
class OutOfMemoryError : public Error {
public:
    OutOfMemoryError(std::uint64_t space, std::size_t requested,
                     std::size_t available)
        : Error("out of memory in space " + std::to_string(space) +
                ": requested " + std::to_string(requested) +
                " bytes, available " + std::to_string(available)),
          space_id(space),
          requested_bytes(requested),
          available_bytes(available)
    {}

    std::uint64_t space_id;
    std::size_t requested_bytes;
    std::size_t available_bytes;
};


/// Operand dimensions do not match.
class ShapeError : public Error {
public:
    using Error::Error;
};


/// Element kinds of two arrays do not match.
class TypeError : public Error {
public:
    using Error::Error;
};


/// Operands live on different executors where one is required.
class PlacementError : public Error {
public:
    using Error::Error;
};


/// API misuse detected at the call site (unknown dependency id, unknown
/// report format, ...).
class UsageError : public Error {
public:
    using Error::Error;
};


/// No kernel implementation registered for the requested backend.
class DispatchError : public Error {
public:
    using Error::Error;
};


/// A collective was invoked with invalid parameters (source rank out of
/// range, non-power-of-two subgroup size, ...).
class CollectiveUsageError : public Error {
public:
    using Error::Error;
};


/// A collective was invoked while part of the subgroup's lanes were
/// inactive. Hardware leaves this undefined; the simulator detects it.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed input data (matrix market files, vector files, bad indices).
class FormatError : public Error {
public:
    using Error::Error;
};


/// Structurally valid input using a feature that is deliberately not
/// supported (complex fields, array format, hermitian symmetry).
class UnsupportedFormatError : public FormatError {
public:
    using FormatError::FormatError;
};


/// A Krylov recurrence divided by a vanishing scalar.
class BreakdownError : public Error {
public:
    BreakdownError(const std::string& what, int iter)
        : Error(what + " at iteration " + std::to_string(iter)),
          iteration(iter)
    {}

    int iteration;
};


/// A benchmark's output failed verification against the reference
/// recomputation.
class BenchmarkIntegrityError : public Error {
public:
    using Error::Error;
};


}  // namespace larch

#endif  // LARCH_CORE_ERROR_HPP
