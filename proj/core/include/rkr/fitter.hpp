#pragma once

#include <functional>
#include <string>

#include "rkr/data.hpp"

namespace rkr {

/// A fitted decision function, evaluated row-wise.
using Predictor = std::function<Vector(const Matrix&)>;

/// Type-erased fit procedure: training data in, decision function out.
/// Must be deterministic given its captured configuration.
struct Fitter {
  std::string label;
  std::function<Predictor(const Dataset&)> fit;
};

}  // namespace rkr
