// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lcris/types.hpp"

#include <stdexcept>
#include <vector>

namespace lcris
{

/// 90 % completion times (seconds) of voltage-driven (rising phase) and
/// relaxation-driven (falling phase) transitions.
struct TransientParams
{
  enum class Model
  {
    exponential,
  };

  double tau_on_90 = 0.010;
  double tau_off_90 = 0.070;
  Model model = Model::exponential;
};

void validate(const TransientParams &params);

class DimensionMismatchError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Per-element phase state of the surface during reconfiguration. Each
/// element relaxes exponentially from `transition_start` toward `target`;
/// `current` is the closed-form state `elapsed` seconds after the last
/// retarget.
class PhaseField
{
public:
  /// Surface at rest in `phases`.
  static PhaseField settled(const ElementMatrix &phases);

  const ElementMatrix &current() const { return current_; }
  const ElementMatrix &target() const { return target_; }
  const ElementMatrix &transition_start() const { return start_; }
  double elapsed() const { return elapsed_; }
  Eigen::Index rows() const { return current_.rows(); }
  Eigen::Index cols() const { return current_.cols(); }

  friend PhaseField retarget(const PhaseField &field, const ElementMatrix &new_target);
  friend PhaseField advance(const PhaseField &field, double dt, const TransientParams &params,
                            Execution exec);

private:
  ElementMatrix current_;
  ElementMatrix target_;
  ElementMatrix start_;
  double elapsed_ = 0.0;
};

/// Starts a new transition from the instantaneous phases.
PhaseField retarget(const PhaseField &field, const ElementMatrix &new_target);

PhaseField advance(const PhaseField &field, double dt, const TransientParams &params,
                   Execution exec = Execution::parallel);

/// Phases `t` seconds after the last retarget, evaluated in closed form.
ElementMatrix phases_at(const PhaseField &field, double t, const TransientParams &params,
                        Execution exec = Execution::parallel);

/// Closed-form phases at each of `times` (ascending, relative to the last
/// retarget).
std::vector<ElementMatrix> snapshot_phases(const PhaseField &field,
                                           const std::vector<double> &times,
                                           const TransientParams &params);

} // namespace lcris
