#pragma once

#include "modespec/field.hpp"
#include "modespec/optical_train.hpp"

namespace modespec {

/// Wave-domain propagation through a lens train: free space by the
/// angular-spectrum method, thin lenses by quadratic phase masks along
/// their power axes, parity by index reversal. Transverse element offsets
/// shift the mask centers, which is how misalignment enters the model.
///
/// After each step the intensity in the outer 5% border of the window is
/// checked; when it exceeds 1e-8 of the total a GridError reports the
/// step, since wrap-around would silently corrupt everything downstream.
ComplexField apply_train(const ComplexField& field, const OpticalTrain& train);

}  // namespace modespec
