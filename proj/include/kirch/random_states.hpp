#ifndef KIRCH_RANDOM_STATES_HPP
#define KIRCH_RANDOM_STATES_HPP

#include <random>

#include "kirch/field.hpp"

namespace kirch {

using Rng = std::mt19937_64;

// Complex coefficients uniform in [-1,1]^2 on every mode of the ball.
SpectralField random_field(int dim, std::int64_t max_radius2, Rng& rng);

// Real-valued field: u_{-j} = conj(u_j) enforced by construction.
SpectralField random_real_field(int dim, std::int64_t max_radius2, Rng& rng);

// Rescale so that ||f||_s equals the target norm (no-op on the zero field).
SpectralField scaled_to_norm(const SpectralField& f, double s, double target);

// (w, conj-reflect w) with ||w||_s = target.
FieldPair random_cc_pair(int dim, std::int64_t max_radius2, Rng& rng, double s, double target);

RealPair random_real_pair(int dim, std::int64_t max_radius2, Rng& rng, double s, double target);

}  // namespace kirch

#endif
