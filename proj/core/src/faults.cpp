#include "dualdetect/faults.hpp"

#include <cmath>
#include <string>

namespace dualdetect {

namespace {

constexpr double kRangeSlack = 1e-12;

void check_unit(double value, const char* name) {
  if (!(value >= -kRangeSlack && value <= 1.0 + kRangeSlack)) {
    throw FaultRangeError(std::string("fault-adjusted ") + name + " = " + std::to_string(value) +
                          " is outside [0, 1]");
  }
}

}  // namespace

FaultModel::FaultModel(const std::array<double, 6>& alphas) : alphas_(alphas) {
  for (double a : alphas_) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("fault probabilities must lie in [0, 1]");
    }
  }
  const auto& a = alphas_;
  if (a[0] + a[2] > 1.0 || a[1] + a[3] > 1.0 || a[4] + a[5] > 1.0) {
    throw std::invalid_argument(
        "fault probabilities leaving one original decision must sum to at most 1");
  }
}

FaultModel FaultModel::uniform(double total) {
  const double each = total / 6.0;
  return FaultModel({each, each, each, each, each, each});
}

double FaultModel::alpha(int i) const {
  if (i < 1 || i > 6) throw std::out_of_range("alpha index must be in 1..6");
  return alphas_[static_cast<std::size_t>(i - 1)];
}

double FaultModel::total() const noexcept {
  double sum = 0.0;
  for (double a : alphas_) sum += a;
  return sum;
}

bool FaultModel::is_zero() const noexcept {
  for (double a : alphas_) {
    if (a != 0.0) return false;
  }
  return true;
}

std::array<double, 3> FaultModel::change_weights(Hypothesis original) const noexcept {
  const auto& a = alphas_;
  // {to Normal, to Event1, to Event2}
  switch (original) {
    case Hypothesis::Event1: return {a[0], 0.0, a[2]};
    case Hypothesis::Event2: return {a[1], a[3], 0.0};
    case Hypothesis::Normal: break;
  }
  return {0.0, a[4], a[5]};
}

std::array<double, 3> FaultModel::reported_distribution(Hypothesis original) const noexcept {
  auto dist = change_weights(original);
  const double moved = dist[0] + dist[1] + dist[2];
  dist[index_of(original)] = 1.0 - moved;
  return dist;
}

LocalMetrics fault_adjust(const LocalMetrics& m, const FaultModel& faults) {
  const double a1 = faults.alpha(1);
  const double a2 = faults.alpha(2);
  const double a3 = faults.alpha(3);
  const double a4 = faults.alpha(4);
  const double a5 = faults.alpha(5);
  const double a6 = faults.alpha(6);

  const double rest_h1 = 1.0 - m.p_d1 - m.p_m1;
  const double rest_h2 = 1.0 - m.p_d2 - m.p_m2;
  const double rest_h0 = 1.0 - m.p_f1 - m.p_f2;

  LocalMetrics out;
  out.p_d1 = m.p_d1 + a4 * m.p_m1 + a5 * rest_h1 - (a1 + a3) * m.p_d1;
  out.p_d2 = m.p_d2 + a3 * m.p_m2 + a6 * rest_h2 - (a2 + a4) * m.p_d2;
  out.p_f1 = m.p_f1 + a4 * m.p_f2 + a5 * rest_h0 - (a1 + a3) * m.p_f1;
  out.p_f2 = m.p_f2 + a3 * m.p_f1 + a6 * rest_h0 - (a2 + a4) * m.p_f2;
  out.p_m1 = m.p_m1 + a3 * m.p_d1 + a6 * rest_h1 - (a2 + a4) * m.p_m1;
  out.p_m2 = m.p_m2 + a4 * m.p_d2 + a5 * rest_h2 - (a1 + a3) * m.p_m2;

  check_unit(out.p_d1, "p_d1");
  check_unit(out.p_d2, "p_d2");
  check_unit(out.p_f1, "p_f1");
  check_unit(out.p_f2, "p_f2");
  check_unit(out.p_m1, "p_m1");
  check_unit(out.p_m2, "p_m2");
  check_unit(out.p_d1 + out.p_m1, "p_d1 + p_m1");
  check_unit(out.p_d2 + out.p_m2, "p_d2 + p_m2");
  check_unit(out.p_f1 + out.p_f2, "p_f1 + p_f2");
  return out;
}

double prob_error_faulty(const SignalModel& model, const Priors& priors,
                         const LambdaThresholds& lambdas, const FusionParams& params,
                         const FaultModel& faults) {
  const auto metrics = local_metrics(model, gammas_from_lambdas(model, lambdas));
  return prob_error(priors, fusion_quality(fault_adjust(metrics, faults), params));
}

}  // namespace dualdetect
