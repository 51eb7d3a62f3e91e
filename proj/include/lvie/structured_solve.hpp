#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvie/assembly.hpp"

namespace lvie {

/// The collocation system has no unique solution that the structured solver
/// can reach: a vanishing triangular diagonal or a singular load subsystem.
class SolvabilityFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves a system shaped as lower triangular plus load columns by
/// superposition.
///
/// With L the triangular part and c_j the a_j(tau_i) columns, forward
/// substitution gives x0 = L^{-1} f and x_j = L^{-1}(-c_j); the load values y
/// then satisfy y_k = x0[v_k] + sum_j y_j x_j[v_k], an (m-1)x(m-1) system.
/// The answer is x0 + sum_j y_j x_j. O(m N^2) time.
std::vector<double> structured_solve(const CollocationSystem& sys);

/// Same algorithm, pulling rows from the assembler so only O(m N) memory is used.
std::vector<double> structured_solve(const RowAssembler& rows);

}  // namespace lvie
