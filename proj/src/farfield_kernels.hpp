// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lcris/farfield.hpp"

namespace lcris::detail
{

void check_inputs(const ArrayGeometry &geom, const ElementMatrix &phases,
                  const ElementMatrix &amplitudes);

/// Pattern with directions and visibility filled and all values zero.
Pattern empty_pattern(const ArrayGeometry &geom, const Direction &incident,
                      const AngularGrid &grid);

/// Normalized |AF|^2 at summed direction cosines (U, V), one complex
/// exponential per element.
double direct_point(const ArrayGeometry &geom, const ElementMatrix &phases,
                    const ElementMatrix &amplitudes, double su, double sv);

/// Serial: direct_point at every valid sample. Parallel: the same sum with the
/// y-phase factor hoisted per grid row, OpenMP over rows.
void fill_direct(const ArrayGeometry &geom, const ElementMatrix &phases,
                 const ElementMatrix &amplitudes, Pattern &pattern, Execution exec);

void fill_fft(const ArrayGeometry &geom, const ElementMatrix &phases,
              const ElementMatrix &amplitudes, Pattern &pattern, const FarFieldOptions &options);

} // namespace lcris::detail
