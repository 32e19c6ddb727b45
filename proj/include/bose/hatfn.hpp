#pragma once

namespace bose {

// Normalized two-ball overlap profile j(t) = 12 (t+2) [1-t]_+^2 for t >= 0.
double hat_j(double t);

// integral_0^1 t^2 j(t) dt by quadrature; equals 1.
double hat_moment();

// The same profile from its geometric definition: (144/pi) times the overlap
// volume of two balls of radius 1/2 whose centers sit a distance t apart,
// evaluated by slicing the lens into discs and integrating the cross-section.
double hat_j_overlap(double t);

}  // namespace bose
