#pragma once

#include <stdexcept>
#include <string>

namespace pbtk {

/// A bump specification that cannot be realized by a smooth function
/// (ramp too short for the requested derivative cap, plateau touching
/// the support boundary, ...).
struct InfeasibleSpec : std::runtime_error {
  explicit InfeasibleSpec(const std::string& what) : std::runtime_error(what) {}
};

/// Requested the factorized bracket path for a pair whose annulus
/// factors do not match.
struct StructureMismatch : std::runtime_error {
  explicit StructureMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Finite-difference stencil would leave the evaluation domain.
struct DomainEdge : std::runtime_error {
  explicit DomainEdge(const std::string& what) : std::runtime_error(what) {}
};

/// Certified upper bound exceeds the grid estimate by more than 50%,
/// so the sup-norm report would be uninformative.
struct ResolutionTooCoarse : std::runtime_error {
  explicit ResolutionTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

/// Parameter ordering violated (requires 0 < p < q).
struct BadOrder : std::invalid_argument {
  explicit BadOrder(const std::string& what) : std::invalid_argument(what) {}
};

/// Pair parameters do not match the requested rescaling.
struct ParamMismatch : std::invalid_argument {
  explicit ParamMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside its documented range (e.g. s outside [0, q]).
struct OutOfRange : std::invalid_argument {
  explicit OutOfRange(const std::string& what) : std::invalid_argument(what) {}
};

/// Boundary sets overlap; the four-set invariant is +infinity by convention.
struct OverlapInstance : std::runtime_error {
  explicit OverlapInstance(const std::string& what) : std::runtime_error(what) {}
};

/// Minimizer could not be seeded with any feasible pair.
struct NoFeasiblePoint : std::runtime_error {
  explicit NoFeasiblePoint(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pbtk
