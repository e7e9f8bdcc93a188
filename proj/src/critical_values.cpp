#include "patecon/critical_values.hpp"

#include "patecon/errors.hpp"

namespace patecon::econ {

std::string to_string(TestKind t) {
  switch (t) {
    case TestKind::ADF: return "ADF";
    case TestKind::EngleGranger: return "EngleGranger";
    case TestKind::KPSS: return "KPSS";
  }
  return "ADF";
}

std::string to_string(Deterministic d) {
  switch (d) {
    case Deterministic::None: return "None";
    case Deterministic::Constant: return "Constant";
    case Deterministic::ConstantTrend: return "ConstantTrend";
  }
  return "None";
}

namespace {

// cv(T) = b_inf + b1/T + b2/T^2, per MacKinnon (1991), "Critical Values
// for Cointegration Tests". Rows: 1%, 5%, 10%.
struct Surface {
  double b_inf, b1, b2;
};

constexpr Surface kAdfNone[3] = {
    {-2.5658, -1.960, -10.04}, {-1.9393, -0.398, 0.0}, {-1.6156, -0.181, 0.0}};
constexpr Surface kAdfConst[3] = {
    {-3.4336, -5.999, -29.25}, {-2.8621, -2.738, -8.36}, {-2.5671, -1.438, -4.48}};
constexpr Surface kAdfTrend[3] = {
    {-3.9638, -8.353, -47.44}, {-3.4126, -4.039, -17.83}, {-3.1279, -2.418, -7.58}};
// Two variables, constant in the static regression (the Engle-Granger
// residual test used for pairwise cointegration).
constexpr Surface kEgConst2[3] = {
    {-3.9001, -10.534, -30.03}, {-3.3377, -5.967, -8.98}, {-3.0462, -4.069, -5.73}};

double eval(const Surface& s, int sample_size) {
  if (sample_size <= 0) return s.b_inf;
  const double t = static_cast<double>(sample_size);
  return s.b_inf + s.b1 / t + s.b2 / (t * t);
}

CriticalValues from_surface(const Surface* rows, int sample_size) {
  return {eval(rows[0], sample_size), eval(rows[1], sample_size), eval(rows[2], sample_size)};
}

}  // namespace

CriticalValues critical_values(TestKind test, Deterministic deterministic,
                               int n_vars, int sample_size) {
  switch (test) {
    case TestKind::ADF:
      if (n_vars != 1) break;
      switch (deterministic) {
        case Deterministic::None: return from_surface(kAdfNone, sample_size);
        case Deterministic::Constant: return from_surface(kAdfConst, sample_size);
        case Deterministic::ConstantTrend: return from_surface(kAdfTrend, sample_size);
      }
      break;
    case TestKind::EngleGranger:
      if (n_vars == 2 && deterministic == Deterministic::Constant) {
        return from_surface(kEgConst2, sample_size);
      }
      break;
    case TestKind::KPSS:
      // Kwiatkowski, Phillips, Schmidt & Shin (1992), Table 1; asymptotic.
      if (deterministic == Deterministic::Constant) return {0.739, 0.463, 0.347};
      if (deterministic == Deterministic::ConstantTrend) return {0.216, 0.146, 0.119};
      break;
  }
  raise(ErrorCode::UnsupportedCombination,
        "critical_values: unsupported combination (" + to_string(test) + ", " +
            to_string(deterministic) + ", n_vars=" + std::to_string(n_vars) +
            "); supported: ADF x {None,Constant,ConstantTrend} x 1 var, "
            "EngleGranger x Constant x 2 vars, KPSS x {Constant,ConstantTrend}");
}

}  // namespace patecon::econ
