// SPDX-License-Identifier: Apache-2.0

#include "lcris/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lcris
{

namespace
{

void require_same_shape(const ElementMatrix &a, const ElementMatrix &b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatchError("phase matrix is " + std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()) + ", field is " +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

inline double relax(double start, double target, double t, const TransientParams &params)
{
  if (start == target)
    return target;
  const double tau = target > start ? params.tau_on_90 : params.tau_off_90;
  // Written as a fraction completed so t = 0 returns `start` exactly; the clamp
  // absorbs the last-ulp overshoot once the fraction rounds to 1.
  const double done = -std::expm1(-std::numbers::ln10 * t / tau);
  const double value = start + (target - start) * done;
  return std::clamp(value, std::min(start, target), std::max(start, target));
}

void relax_all(const ElementMatrix &start, const ElementMatrix &target, double t,
               const TransientParams &params, ElementMatrix &out, Execution exec)
{
  const Eigen::Index n = start.size();
  const double *s = start.data();
  const double *g = target.data();
  double *o = out.data();
  if (exec == Execution::serial)
  {
    for (Eigen::Index i = 0; i < n; ++i)
      o[i] = relax(s[i], g[i], t, params);
    return;
  }
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i)
    o[i] = relax(s[i], g[i], t, params);
}

} // namespace

void validate(const TransientParams &params)
{
  if (!(params.tau_on_90 > 0.0))
    throw std::invalid_argument("tau_on must be positive");
  if (!(params.tau_on_90 <= params.tau_off_90))
    throw std::invalid_argument("tau_on must not exceed tau_off");
}

PhaseField PhaseField::settled(const ElementMatrix &phases)
{
  PhaseField field;
  field.current_ = phases;
  field.target_ = phases;
  field.start_ = phases;
  return field;
}

PhaseField retarget(const PhaseField &field, const ElementMatrix &new_target)
{
  require_same_shape(field.current_, new_target);
  PhaseField next;
  next.current_ = field.current_;
  next.start_ = field.current_;
  next.target_ = new_target;
  next.elapsed_ = 0.0;
  return next;
}

PhaseField advance(const PhaseField &field, double dt, const TransientParams &params,
                   Execution exec)
{
  if (!(dt >= 0.0))
    throw std::invalid_argument("time step must be non-negative");
  validate(params);
  PhaseField next = field;
  next.elapsed_ = field.elapsed_ + dt;
  relax_all(next.start_, next.target_, next.elapsed_, params, next.current_, exec);
  return next;
}

ElementMatrix phases_at(const PhaseField &field, double t, const TransientParams &params,
                        Execution exec)
{
  if (!(t >= 0.0))
    throw std::invalid_argument("snapshot time must be non-negative");
  validate(params);
  ElementMatrix out(field.rows(), field.cols());
  relax_all(field.transition_start(), field.target(), t, params, out, exec);
  return out;
}

std::vector<ElementMatrix> snapshot_phases(const PhaseField &field,
                                           const std::vector<double> &times,
                                           const TransientParams &params)
{
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("snapshot times must be sorted ascending");
  std::vector<ElementMatrix> out;
  out.reserve(times.size());
  for (double t : times)
    out.push_back(phases_at(field, t, params));
  return out;
}

} // namespace lcris
