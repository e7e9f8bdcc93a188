#pragma once

#include <string>

namespace patecon::econ {

enum class TestKind { ADF, EngleGranger, KPSS };

enum class Deterministic { None, Constant, ConstantTrend };

std::string to_string(TestKind t);
std::string to_string(Deterministic d);

struct CriticalValues {
  double cv1 = 0.0;
  double cv5 = 0.0;
  double cv10 = 0.0;
};

// ADF and Engle-Granger values come from MacKinnon's response-surface
// regressions, evaluated at the given sample size (<= 0 means asymptotic).
// KPSS values are the asymptotic table; sample size is ignored. Supported:
// ADF with any deterministic and n_vars = 1; EngleGranger with Constant
// and n_vars = 2; KPSS with Constant or ConstantTrend.
CriticalValues critical_values(TestKind test, Deterministic deterministic,
                               int n_vars, int sample_size);

}  // namespace patecon::econ
