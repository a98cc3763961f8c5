// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

namespace lcris
{

/// Per-element real quantity (phase, amplitude, voltage), indexed (row, col)
/// like the element lattice.
using ElementMatrix = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Kernels come in a serial reference flavour and an OpenMP flavour that
/// agree to rounding.
enum class Execution
{
  serial,
  parallel,
};

} // namespace lcris
