#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dduet/error.hpp"
#include "dduet/propagators.hpp"

namespace dduet {

struct PicardParams {
  int substeps = 16;
  double tol = 1e-10;
  int max_iter = 50;

  void validate() const {
    require(substeps >= 2, ErrorCode::InvalidArgument, "Picard substeps must be >= 2");
    require(tol > 0.0, ErrorCode::InvalidArgument, "Picard tolerance must be positive");
    require(max_iter >= 1, ErrorCode::InvalidArgument, "Picard max_iter must be >= 1");
  }
};

/// Snapshots of one converged local solve plus the iteration history.
template <class State>
struct LocalSolution {
  Trajectory<State> trajectory;
  int iterations = 0;
  std::vector<double> increments;  // relative change per iteration

  const State& final_state() const { return trajectory.states.back(); }
};

namespace detail {

// Tracks successive Picard increments; throws NoContraction on max_iter or on
// three consecutive increases.
class ContractionMonitor {
 public:
  explicit ContractionMonitor(const PicardParams& p) : params_(p) {}

  /// Records an increment; returns true once it is within tolerance.
  bool record(double increment) {
    require(std::isfinite(increment), ErrorCode::NoContraction, "Picard iterate is not finite");
    if (!history_.empty() && increment > history_.back()) {
      ++rising_;
    } else {
      rising_ = 0;
    }
    history_.push_back(increment);
    if (increment <= params_.tol) return true;
    require(rising_ < 3, ErrorCode::NoContraction,
            "Picard increments grew on 3 consecutive iterations");
    require(static_cast<int>(history_.size()) < params_.max_iter, ErrorCode::NoContraction,
            "Picard iteration did not reach tolerance in " + std::to_string(params_.max_iter) +
                " iterations");
    return false;
  }

  const std::vector<double>& history() const { return history_; }

 private:
  PicardParams params_;
  std::vector<double> history_;
  int rising_ = 0;
};

// sum |a - b|^2 and sum |a|^2 over a set of coefficient arrays.
inline void accumulate_change(const std::vector<cplx>& next, const std::vector<cplx>& prev,
                              double& diff2, double& norm2) {
  for (std::size_t i = 0; i < next.size(); ++i) {
    diff2 += std::norm(next[i] - prev[i]);
    norm2 += std::norm(next[i]);
  }
}

inline double relative_change(double diff2, double norm2) {
  if (norm2 == 0.0) return std::sqrt(diff2);
  return std::sqrt(diff2 / norm2);
}

}  // namespace detail

}  // namespace dduet
