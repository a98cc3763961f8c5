// SPDX-License-Identifier: Apache-2.0

#include "lcris/parallel.hpp"

#include <cstdlib>
#include <omp.h>
#include <string>

namespace lcris
{

void set_thread_count(int threads)
{
  if (threads > 0)
    omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

int configure_threads_from_environment()
{
  if (const char *env = std::getenv("LCRIS_NUM_THREADS"))
  {
    try
    {
      set_thread_count(std::stoi(env));
    }
    catch (const std::exception &)
    {
      // ignored: leave the OpenMP default in place
    }
  }
  return max_threads();
}

} // namespace lcris
