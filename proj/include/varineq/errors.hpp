// varineq - solver library for variable inequalities
// Licensed under Apache 2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace varineq {

// Thrown when an iterative projection (Dykstra cycles) exhausts its cycle
// budget. Carries the last iterate and the last cycle displacement so the
// caller can decide whether to treat the result as a stall or as suspected
// infeasibility.
class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(std::string what, std::vector<double> last_iterate,
                  double displacement)
      : std::runtime_error(std::move(what)),
        last_iterate_(std::move(last_iterate)),
        displacement_(displacement) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double displacement() const { return displacement_; }

 private:
  std::vector<double> last_iterate_;
  double displacement_;
};

// Thrown when the projected-gradient NNLS used for dual-cone membership
// fails to reach stationarity within its iteration cap.
class NnlsError : public std::runtime_error {
 public:
  NnlsError(std::string what, double best_residual)
      : std::runtime_error(std::move(what)), best_residual_(best_residual) {}

  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

// Thrown when a projection target is provably empty (e.g. the active-set QP
// oracle finds no feasible candidate).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace varineq
