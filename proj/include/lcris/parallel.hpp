// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace lcris
{

void set_thread_count(int threads);
int max_threads();

/// Applies LCRIS_NUM_THREADS when set to a positive integer. Returns the
/// thread count in effect afterwards.
int configure_threads_from_environment();

} // namespace lcris
